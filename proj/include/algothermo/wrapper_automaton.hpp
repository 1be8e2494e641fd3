#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "algothermo/bits.hpp"
#include "algothermo/machine.hpp"

namespace algothermo {

// Marker-avoidance automaton built from the prefix function of the marker.
// State k (0 <= k < h) means the longest suffix of the input read so far that
// is a proper prefix of the marker has length k; completing the marker is
// the dead state.
class WrapperAutomaton {
public:
    static constexpr int kDead = -1;

    explicit WrapperAutomaton(Marker marker);

    const Marker& marker() const noexcept { return marker_; }
    int state_count() const noexcept { return marker_.length(); }

    // Successor of `state` on `bit`, or kDead.
    int next(int state, int bit) const { return transitions_.at(static_cast<std::size_t>(state))[bit]; }

    // A[i][j] = number of symbols taking safe state i to safe state j.
    const std::vector<std::vector<int>>& transfer_matrix() const noexcept { return matrix_; }

    // Exact number of length-n strings with no occurrence of the marker.
    // Throws std::overflow_error past 64 bits.
    std::uint64_t count_avoiding(int n) const;

    // a_d: wrappers s || M of total length d with s marker-free.
    std::uint64_t wrapper_count(int d) const;

    // Uniform draw from the wrappers of length d, deterministic in `seed`.
    // Throws std::domain_error when there are none.
    BitString sample_wrapper(int d, std::uint64_t seed) const;

private:
    // completions[k][s]: marker-free continuations of k symbols from state s.
    std::vector<std::vector<std::uint64_t>> completion_table(int length) const;

    Marker marker_;
    std::vector<std::array<int, 2>> transitions_;
    std::vector<std::vector<int>> matrix_;
};

struct GrowthRate {
    double mu = 0.0;     // spectral radius of the transfer matrix
    double alpha = 0.0;  // log2(mu)
    double tolerance = 0.0;
    long iterations = 0;
    bool converged = false;
    // Only finitely many marker-free strings exist (mu < 1).
    bool finite_family = false;
};

// Power iteration on A + I (the shift removes periodicity; A is typically
// reducible), stopped when the relative Rayleigh-quotient change drops below
// `tolerance`.
GrowthRate growth_rate(const WrapperAutomaton& automaton, double tolerance = 1e-12, long max_iterations = 1'000'000);

// m + sum_{delta=1..max_excess} m^(delta) 2^(-alpha delta). The spectrum must
// reach max_excess. Throws std::domain_error for alpha outside [0, 1).
double effective_degeneracy(const DegeneracySpectrum& spectrum, double alpha, int max_excess);

// True when alpha = 0 and alternatives beyond the ground layer exist: the
// undiscounted sum then need not settle as the excess grows.
bool effective_degeneracy_unstable(const DegeneracySpectrum& spectrum, double alpha, int max_excess);

}  // namespace algothermo
