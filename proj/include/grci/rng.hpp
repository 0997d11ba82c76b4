#pragma once

#include <cstdint>
#include <cmath>
#include <random>
#include <vector>

namespace grci {

// splitmix64 finalizer; used to derive independent stream seeds from keys.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t combine_seed(std::uint64_t a, std::uint64_t b) {
    return mix64(a ^ (mix64(b) + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

// FNV-1a over raw bytes; keys jitter streams to data content so that
// symmetric calls see identical noise.
inline std::uint64_t hash_bytes(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::uint64_t hash_doubles(const std::vector<double>& v) {
    return hash_bytes(v.data(), v.size() * sizeof(double));
}

// Deterministic random stream. All distributions are hand-rolled on top of
// mt19937_64 so output is identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(mix64(seed)) {}

    std::uint64_t next_u64() { return eng_(); }

    // [0, 1)
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // (0, 1]; safe as a log argument
    double uniform_pos() { return 1.0 - uniform(); }

    double normal() {
        double u1 = uniform_pos();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    double exponential() { return -std::log(uniform_pos()); }

    double chi_square(int df) {
        double s = 0.0;
        for (int i = 0; i < df; ++i) {
            double z = normal();
            s += z * z;
        }
        return s;
    }

    double student_t(int df) {
        return normal() / std::sqrt(chi_square(df) / df);
    }

    double logistic() {
        double u = uniform_pos();
        return std::log(u / (1.0 - u));
    }

    // [0, n)
    std::size_t uniform_index(std::size_t n) {
        return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
    }

    bool bernoulli(double p) { return uniform() < p; }

    Rng split(std::uint64_t key) { return Rng(combine_seed(next_u64(), key)); }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[uniform_index(i)]);
        }
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace grci
