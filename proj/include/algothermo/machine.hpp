#pragma once

// Toy regular universal machine. A program is w || q: a wrapper w = s || M
// (s free of the marker M) followed by a self-delimiting core q. The core is
// a non-empty list of object ids; the program outputs the set of listed ids.
//
// Core code: each element is a continuation bit 1 followed by the Elias-gamma
// code of (id + 1); the list is terminated by a single 0.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "algothermo/bits.hpp"

namespace algothermo {

inline constexpr int kMinUniverseSize = 2;
inline constexpr int kMaxUniverseSize = 24;
inline constexpr int kMaxCoreLength = 40;

// Subset of the universe as a bitmask over object ids.
class ObjectSet {
public:
    constexpr ObjectSet() = default;
    constexpr explicit ObjectSet(std::uint32_t mask) : mask_(mask) {}

    static ObjectSet of(std::initializer_list<int> ids);
    static constexpr ObjectSet single(int id) { return ObjectSet(std::uint32_t{1} << id); }

    constexpr std::uint32_t mask() const noexcept { return mask_; }
    constexpr bool empty() const noexcept { return mask_ == 0; }
    int size() const noexcept;
    constexpr bool contains(int id) const noexcept { return (mask_ >> id) & 1U; }
    constexpr bool includes(ObjectSet other) const noexcept {
        return (mask_ & other.mask_) == other.mask_;
    }
    constexpr ObjectSet with(int id) const noexcept { return ObjectSet(mask_ | (std::uint32_t{1} << id)); }

    // "{0,2}"
    std::string to_string() const;

    friend constexpr ObjectSet operator|(ObjectSet a, ObjectSet b) { return ObjectSet(a.mask_ | b.mask_); }
    friend constexpr bool operator==(ObjectSet, ObjectSet) = default;
    friend constexpr auto operator<=>(ObjectSet, ObjectSet) = default;

private:
    std::uint32_t mask_ = 0;
};

class Universe {
public:
    // Throws std::invalid_argument unless 2 <= size <= 24 and labels is
    // either empty or has one entry per object.
    explicit Universe(int size, std::vector<std::string> labels = {});

    int size() const noexcept { return size_; }
    bool contains(int id) const noexcept { return id >= 0 && id < size_; }
    bool contains(ObjectSet set) const noexcept { return (set.mask() >> size_) == 0; }
    ObjectSet all() const noexcept { return ObjectSet((std::uint32_t{1} << size_) - 1); }

    // Display name; the decimal id when no labels were given.
    std::string label(int id) const;
    const std::vector<std::string>& labels() const noexcept { return labels_; }

private:
    int size_;
    std::vector<std::string> labels_;
};

// Wrapper terminator. Only markers with trivial autocorrelation are
// admissible: no proper non-empty suffix equals a prefix. For those, the
// first occurrence of M in s || M || q (s M-free) ends exactly at the wrapper.
class Marker {
public:
    // Throws std::invalid_argument for inadmissible markers.
    explicit Marker(BitString bits);

    static bool is_admissible(const BitString& bits);

    const BitString& bits() const noexcept { return bits_; }
    int length() const noexcept { return static_cast<int>(bits_.size()); }

private:
    BitString bits_;
};

// Element list of a core; duplicates allowed, order significant for the code.
struct CoreExpr {
    std::vector<int> ids;

    ObjectSet evaluate() const;

    friend bool operator==(const CoreExpr&, const CoreExpr&) = default;
};

// Bits spent on one list element with the given id.
int element_cost(int id);

// Throws std::domain_error for an empty list or an id outside the universe.
BitString encode_core(const CoreExpr& expr, const Universe& universe);

struct DecodedCore {
    CoreExpr expr;
    std::size_t consumed = 0;
};

// Decodes one core starting at `offset`. Bits past the terminator are not
// inspected. Throws ParseError on truncation, an empty list or an id outside
// the universe.
DecodedCore decode_core(const BitString& bits, const Universe& universe, std::size_t offset = 0);

struct ParsedProgram {
    BitString wrapper;
    BitString core;
    CoreExpr expr;

    int wrapper_length() const noexcept { return static_cast<int>(wrapper.size()); }
    BitString program() const { return wrapper + core; }
};

// Splits at the first occurrence of the marker. Throws ParseError when the
// marker never occurs or the remainder is not exactly one complete core.
ParsedProgram parse_program(const BitString& program, const Marker& marker, const Universe& universe);

// Output set of a halting program. The wrapper does not influence the result.
ObjectSet execute(const BitString& program, const Universe& universe, const Marker& marker);

// One enumerated core, bits packed most-significant-first into `code`.
struct CoreEntry {
    std::uint64_t code = 0;
    int length = 0;
    ObjectSet output;

    BitString bits() const { return BitString::from_word(code, length); }
};

// Multiplicities of cores covering a target at each excess above its ground
// core length: counts[0] = m, counts[delta] = m^(delta).
struct DegeneracySpectrum {
    int ground_core_length = 0;
    std::vector<std::uint64_t> counts;

    std::uint64_t ground_multiplicity() const { return counts.at(0); }
    int max_excess() const noexcept { return static_cast<int>(counts.size()) - 1; }
};

// Every core of length <= max_core_length, with a per-length histogram of
// output sets for covering queries ("output contains S").
class ProgramTable {
public:
    // Throws std::invalid_argument if max_core_length is outside [1, 40].
    static ProgramTable enumerate(Universe universe, Marker marker, int max_core_length);

    const Universe& universe() const noexcept { return universe_; }
    const Marker& marker() const noexcept { return marker_; }
    int max_core_length() const noexcept { return max_core_length_; }

    // Sorted by (length, code).
    std::span<const CoreEntry> cores() const noexcept { return cores_; }

    // Number of cores of exactly `length` bits whose output contains `target`.
    std::uint64_t count_covering(ObjectSet target, int length) const;

    // count_covering for every length 0..max_core_length.
    std::vector<std::uint64_t> covering_counts(ObjectSet target) const;

    // Minimal core length covering `target` within the bound, if any.
    std::optional<int> ground_core_length(ObjectSet target) const;

private:
    struct MaskCount {
        std::uint32_t mask;
        std::uint64_t count;
    };

    ProgramTable(Universe universe, Marker marker, int max_core_length);

    Universe universe_;
    Marker marker_;
    int max_core_length_;
    std::vector<CoreEntry> cores_;
    std::vector<std::vector<MaskCount>> histogram_;  // indexed by core length
};

// Machine ground length h + K0(S): the shortest program whose output
// contains `target`. Throws std::domain_error for an empty target or ids
// outside the universe, UnsatisfiableError if nothing covers it in bound.
int ground_length(const ProgramTable& table, ObjectSet target);

// Spectrum for excesses 0..max_excess. Throws BoundError when
// K0(target) + max_excess exceeds the enumerated core length.
DegeneracySpectrum multiplicity_spectrum(const ProgramTable& table, ObjectSet target, int max_excess);

// CSV with header core_bits,length,output_mask.
void write_core_csv(const ProgramTable& table, std::ostream& out);

}  // namespace algothermo
