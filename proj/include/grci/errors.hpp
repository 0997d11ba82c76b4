#pragma once

#include <stdexcept>
#include <string>

namespace grci {

struct DegenerateColumn : std::runtime_error {
    explicit DegenerateColumn(const std::string& what = "column has fewer than 2 distinct values")
        : std::runtime_error(what) {}
};

struct InsufficientSamples : std::runtime_error {
    explicit InsufficientSamples(const std::string& what = "not enough samples")
        : std::runtime_error(what) {}
};

struct DegenerateLabel : std::runtime_error {
    explicit DegenerateLabel(const std::string& what = "labels contain a single class")
        : std::runtime_error(what) {}
};

struct EnumerationBudget : std::runtime_error {
    explicit EnumerationBudget(const std::string& what = "too many features for exact enumeration")
        : std::runtime_error(what) {}
};

struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace grci
