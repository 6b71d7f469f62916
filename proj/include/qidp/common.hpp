#pragma once

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qidp {

// Bad input data: unreadable files, malformed graph documents, invalid
// configuration values. CLI maps these to exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed graph text specifically.
class ParseError : public InputError {
public:
    using InputError::InputError;
};

// Instance too large for an exhaustive table or enumeration.
class BudgetError : public InputError {
public:
    using InputError::InputError;
};

// Non-finite values or other numerical failures. CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shortest round-trip decimal rendering, identical on every platform.
inline std::string format_double(double value) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// Bit-string conventions.
//
// A basis state of n qubits prints as z_0 z_1 ... z_{n-1}, left to right, so
// position i of the printed string is variable/qubit i. The basis index is
// index(z) = sum_i z_i * 2^{n-1-i}, i.e. z_0 is the most significant bit.
// ---------------------------------------------------------------------------

inline int index_bit(std::uint64_t index, int position, int width) {
    return static_cast<int>((index >> (width - 1 - position)) & 1u);
}

inline std::string to_bitstring(std::uint64_t index, int width) {
    std::string s(static_cast<std::size_t>(width), '0');
    for (int i = 0; i < width; ++i) {
        if (index_bit(index, i, width)) s[static_cast<std::size_t>(i)] = '1';
    }
    return s;
}

inline std::uint64_t from_bitstring(std::string_view bits) {
    std::uint64_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw InputError("bit string contains non-binary character");
        index = (index << 1) | static_cast<std::uint64_t>(c == '1');
    }
    return index;
}

// Counter-based generator (splitmix64). The stream depends only on the seed,
// not on the platform or standard library, which keeps sampled reports
// reproducible everywhere.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Independent substream for (seed, tag); one splitmix step decorrelates
// neighbouring tags.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    SplitMix64 rng(seed ^ (tag * 0xd1342543de82ef95ull));
    return rng.next();
}

}  // namespace qidp
