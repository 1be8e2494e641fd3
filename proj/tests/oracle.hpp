#pragma once

// Brute-force reference implementations shared by the tests. Nothing here
// calls into the library: programs are materialized as plain bit strings and
// run through a separately written parser.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace oracle {

inline std::string bits_of(std::uint64_t word, int length) {
    std::string s(static_cast<std::size_t>(length), '0');
    for (int i = 0; i < length; ++i) {
        if ((word >> (length - 1 - i)) & 1U) s[static_cast<std::size_t>(i)] = '1';
    }
    return s;
}

// Output mask of the core occupying exactly s[pos..], or nullopt.
inline std::optional<std::uint32_t> run_core(const std::string& s, std::size_t pos, int n) {
    std::uint32_t mask = 0;
    bool any = false;
    while (true) {
        if (pos >= s.size()) return std::nullopt;
        if (s[pos++] == '0') break;
        std::size_t zeros = 0;
        while (pos < s.size() && s[pos] == '0') {
            ++zeros;
            ++pos;
        }
        if (pos + zeros >= s.size()) return std::nullopt;
        std::uint64_t value = 0;
        for (std::size_t k = 0; k <= zeros; ++k) value = value * 2 + static_cast<std::uint64_t>(s[pos + k] - '0');
        pos += zeros + 1;
        const std::uint64_t id = value - 1;
        if (id >= static_cast<std::uint64_t>(n)) return std::nullopt;
        mask |= std::uint32_t{1} << id;
        any = true;
    }
    if (!any || pos != s.size()) return std::nullopt;
    return mask;
}

// Output mask of a complete program, or nullopt if it does not halt.
inline std::optional<std::uint32_t> run(const std::string& program, const std::string& marker, int n) {
    const std::size_t at = program.find(marker);
    if (at == std::string::npos) return std::nullopt;
    return run_core(program, at + marker.size(), n);
}

// histogram[len][mask] = number of halting programs of that length.
struct Census {
    int n = 0;
    std::string marker;
    int max_length = 0;
    std::vector<std::map<std::uint32_t, std::uint64_t>> histogram;

    static Census build(int n, const std::string& marker, int max_length) {
        Census c{n, marker, max_length, std::vector<std::map<std::uint32_t, std::uint64_t>>(
                                            static_cast<std::size_t>(max_length) + 1)};
        for (int len = 1; len <= max_length; ++len) {
            for (std::uint64_t w = 0; w < (std::uint64_t{1} << len); ++w) {
                if (auto out = run(bits_of(w, len), marker, n)) ++c.histogram[static_cast<std::size_t>(len)][*out];
            }
        }
        return c;
    }

    std::uint64_t count(std::uint32_t target, int len) const {
        std::uint64_t total = 0;
        for (const auto& [mask, k] : histogram.at(static_cast<std::size_t>(len))) {
            if ((mask & target) == target) total += k;
        }
        return total;
    }

    std::optional<int> ground(std::uint32_t target) const {
        for (int len = 1; len <= max_length; ++len) {
            if (count(target, len) > 0) return len;
        }
        return std::nullopt;
    }

    // sum over covering programs with |p| <= max_len of e^{-beta |p|}
    double partition(std::uint32_t target, double beta, int max_len) const {
        double z = 0.0;
        for (int len = 1; len <= max_len; ++len) z += static_cast<double>(count(target, len)) * std::exp(-beta * len);
        return z;
    }

    double kraft(int max_len) const {
        double sum = 0.0;
        for (int len = 1; len <= max_len; ++len) {
            for (const auto& [mask, k] : histogram.at(static_cast<std::size_t>(len))) {
                sum += static_cast<double>(k) * std::ldexp(1.0, -len);
            }
        }
        return sum;
    }
};

// Strings of length len with no occurrence of marker.
inline std::uint64_t avoiding(const std::string& marker, int len) {
    std::uint64_t total = 0;
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << len); ++w) {
        if (bits_of(w, len).find(marker) == std::string::npos) ++total;
    }
    return total;
}

inline bool trivially_autocorrelated(const std::string& marker) {
    for (std::size_t k = 1; k < marker.size(); ++k) {
        if (marker.compare(0, k, marker, marker.size() - k, k) == 0) return false;
    }
    return true;
}

}  // namespace oracle
