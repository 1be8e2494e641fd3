#include "algothermo/wrapper_automaton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "algothermo/random.hpp"

namespace algothermo {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t sum = 0;
    if (__builtin_add_overflow(a, b, &sum)) throw std::overflow_error("avoiding-string count exceeds 64 bits");
    return sum;
}

}  // namespace

WrapperAutomaton::WrapperAutomaton(Marker marker) : marker_(std::move(marker)) {
    const std::string& m = marker_.bits().str();
    const int h = marker_.length();

    // KMP failure function over the marker.
    std::vector<int> failure(static_cast<std::size_t>(h), 0);
    for (int i = 1, k = 0; i < h; ++i) {
        while (k > 0 && m[static_cast<std::size_t>(i)] != m[static_cast<std::size_t>(k)]) {
            k = failure[static_cast<std::size_t>(k - 1)];
        }
        if (m[static_cast<std::size_t>(i)] == m[static_cast<std::size_t>(k)]) ++k;
        failure[static_cast<std::size_t>(i)] = k;
    }

    transitions_.resize(static_cast<std::size_t>(h));
    matrix_.assign(static_cast<std::size_t>(h), std::vector<int>(static_cast<std::size_t>(h), 0));
    for (int state = 0; state < h; ++state) {
        for (int bit = 0; bit < 2; ++bit) {
            const char c = bit ? '1' : '0';
            int k = state;
            while (k > 0 && m[static_cast<std::size_t>(k)] != c) k = failure[static_cast<std::size_t>(k - 1)];
            if (m[static_cast<std::size_t>(k)] == c) ++k;
            const int target = k == h ? kDead : k;
            transitions_[static_cast<std::size_t>(state)][static_cast<std::size_t>(bit)] = target;
            if (target != kDead) ++matrix_[static_cast<std::size_t>(state)][static_cast<std::size_t>(target)];
        }
    }
}

std::uint64_t WrapperAutomaton::count_avoiding(int n) const {
    if (n < 0) throw std::domain_error("length must be non-negative");
    const auto h = static_cast<std::size_t>(state_count());
    std::vector<std::uint64_t> ways(h, 0), next_ways(h);
    ways[0] = 1;
    for (int step = 0; step < n; ++step) {
        std::fill(next_ways.begin(), next_ways.end(), 0);
        for (std::size_t s = 0; s < h; ++s) {
            if (ways[s] == 0) continue;
            for (int target : transitions_[s]) {
                if (target != kDead) next_ways[static_cast<std::size_t>(target)] = checked_add(next_ways[static_cast<std::size_t>(target)], ways[s]);
            }
        }
        ways.swap(next_ways);
    }
    std::uint64_t total = 0;
    for (std::uint64_t w : ways) total = checked_add(total, w);
    return total;
}

std::uint64_t WrapperAutomaton::wrapper_count(int d) const {
    return d < state_count() ? 0 : count_avoiding(d - state_count());
}

std::vector<std::vector<std::uint64_t>> WrapperAutomaton::completion_table(int length) const {
    const auto h = static_cast<std::size_t>(state_count());
    std::vector<std::vector<std::uint64_t>> completions(static_cast<std::size_t>(length) + 1,
                                                        std::vector<std::uint64_t>(h, 0));
    std::fill(completions[0].begin(), completions[0].end(), 1);
    for (std::size_t k = 1; k <= static_cast<std::size_t>(length); ++k) {
        for (std::size_t s = 0; s < h; ++s) {
            for (int target : transitions_[s]) {
                if (target != kDead) {
                    completions[k][s] = checked_add(completions[k][s], completions[k - 1][static_cast<std::size_t>(target)]);
                }
            }
        }
    }
    return completions;
}

BitString WrapperAutomaton::sample_wrapper(int d, std::uint64_t seed) const {
    if (wrapper_count(d) == 0) {
        throw std::domain_error("no wrapper of length " + std::to_string(d) + " for marker " + marker_.bits().str());
    }
    const int free_length = d - state_count();
    const auto completions = completion_table(free_length);
    Rng rng(seed);
    BitString out;
    int state = 0;
    for (int remaining = free_length; remaining > 0; --remaining) {
        const auto ways_after = [&](int bit) -> std::uint64_t {
            const int target = next(state, bit);
            return target == kDead ? 0 : completions[static_cast<std::size_t>(remaining - 1)][static_cast<std::size_t>(target)];
        };
        const std::uint64_t zero_ways = ways_after(0);
        const std::uint64_t total = zero_ways + ways_after(1);
        const int bit = rng.below(total) < zero_ways ? 0 : 1;
        out.push_back(bit == 1);
        state = next(state, bit);
    }
    out.append(marker_.bits());
    return out;
}

GrowthRate growth_rate(const WrapperAutomaton& automaton, double tolerance, long max_iterations) {
    if (!(tolerance > 0.0)) throw std::domain_error("tolerance must be positive");
    const auto& a = automaton.transfer_matrix();
    const std::size_t h = a.size();

    std::vector<double> v(h, 1.0 / std::sqrt(static_cast<double>(h))), w(h);
    GrowthRate out;
    out.tolerance = tolerance;
    double previous = std::numeric_limits<double>::quiet_NaN();
    for (out.iterations = 1; out.iterations <= max_iterations; ++out.iterations) {
        for (std::size_t i = 0; i < h; ++i) {
            double sum = v[i];
            for (std::size_t j = 0; j < h; ++j) sum += a[i][j] * v[j];
            w[i] = sum;
        }
        double dot = 0.0;
        double norm2 = 0.0;
        for (std::size_t i = 0; i < h; ++i) {
            dot += v[i] * w[i];
            norm2 += w[i] * w[i];
        }
        const double rayleigh = dot;  // v has unit norm
        const double norm = std::sqrt(norm2);
        for (std::size_t i = 0; i < h; ++i) v[i] = w[i] / norm;
        if (std::abs(rayleigh - previous) < tolerance * std::abs(rayleigh)) {
            out.converged = true;
            previous = rayleigh;
            break;
        }
        previous = rayleigh;
    }
    if (out.iterations > max_iterations) out.iterations = max_iterations;
    out.mu = std::max(previous - 1.0, 0.0);
    out.finite_family = out.mu < 1.0 - 1e-9;
    if (out.finite_family) {
        out.alpha = -std::numeric_limits<double>::infinity();
    } else {
        out.mu = std::max(out.mu, 1.0);
        out.alpha = std::log2(out.mu);
    }
    return out;
}

double effective_degeneracy(const DegeneracySpectrum& spectrum, double alpha, int max_excess) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in [0, 1)");
    if (max_excess < 0 || max_excess > spectrum.max_excess()) {
        throw std::domain_error("spectrum holds excesses up to " + std::to_string(spectrum.max_excess()) +
                                ", requested " + std::to_string(max_excess));
    }
    double total = static_cast<double>(spectrum.ground_multiplicity());
    for (int delta = 1; delta <= max_excess; ++delta) {
        total += static_cast<double>(spectrum.counts[static_cast<std::size_t>(delta)]) * std::exp2(-alpha * delta);
    }
    return total;
}

bool effective_degeneracy_unstable(const DegeneracySpectrum& spectrum, double alpha, int max_excess) {
    if (alpha > 0.0) return false;
    for (int delta = 1; delta <= std::min(max_excess, spectrum.max_excess()); ++delta) {
        if (spectrum.counts[static_cast<std::size_t>(delta)] != 0) return true;
    }
    return false;
}

}  // namespace algothermo
