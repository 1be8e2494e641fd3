#include "algothermo/machine.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <ostream>
#include <stdexcept>

#include "algothermo/errors.hpp"

namespace algothermo {

namespace {

// '1' + gamma(id + 1) packed: a leading 1, bit_width(v) - 1 zeros, then v.
struct ElementCode {
    std::uint64_t code;
    int length;
};

ElementCode element_code(int id) {
    const auto v = static_cast<std::uint64_t>(id) + 1;
    const int width = std::bit_width(v);
    return {(std::uint64_t{1} << (2 * width - 1)) | v, 2 * width};
}

}  // namespace

ObjectSet ObjectSet::of(std::initializer_list<int> ids) {
    ObjectSet set;
    for (int id : ids) set = set.with(id);
    return set;
}

int ObjectSet::size() const noexcept { return std::popcount(mask_); }

std::string ObjectSet::to_string() const {
    std::string out = "{";
    bool first = true;
    for (int id = 0; id < 32; ++id) {
        if (!contains(id)) continue;
        if (!first) out += ',';
        out += std::to_string(id);
        first = false;
    }
    return out + "}";
}

Universe::Universe(int size, std::vector<std::string> labels) : size_(size), labels_(std::move(labels)) {
    if (size < kMinUniverseSize || size > kMaxUniverseSize) {
        throw std::invalid_argument("universe size must be in [" + std::to_string(kMinUniverseSize) + ", " +
                                    std::to_string(kMaxUniverseSize) + "], got " + std::to_string(size));
    }
    if (!labels_.empty() && static_cast<int>(labels_.size()) != size) {
        throw std::invalid_argument("universe has " + std::to_string(size) + " objects but " +
                                    std::to_string(labels_.size()) + " labels");
    }
}

std::string Universe::label(int id) const {
    if (!contains(id)) throw std::domain_error("object id " + std::to_string(id) + " outside universe");
    return labels_.empty() ? std::to_string(id) : labels_[static_cast<std::size_t>(id)];
}

bool Marker::is_admissible(const BitString& bits) {
    if (bits.empty()) return false;
    const std::string& s = bits.str();
    for (std::size_t k = 1; k < s.size(); ++k) {
        if (s.compare(s.size() - k, k, s, 0, k) == 0) return false;
    }
    return true;
}

Marker::Marker(BitString bits) : bits_(std::move(bits)) {
    if (bits_.empty()) throw std::invalid_argument("marker must be non-empty");
    if (!is_admissible(bits_)) {
        throw std::invalid_argument("marker \"" + bits_.str() +
                                    "\" overlaps itself (a proper suffix equals a prefix)");
    }
}

ObjectSet CoreExpr::evaluate() const {
    ObjectSet out;
    for (int id : ids) out = out.with(id);
    return out;
}

int element_cost(int id) { return element_code(id).length; }

BitString encode_core(const CoreExpr& expr, const Universe& universe) {
    if (expr.ids.empty()) throw std::domain_error("core must list at least one object");
    BitString out;
    for (int id : expr.ids) {
        if (!universe.contains(id)) {
            throw std::domain_error("object id " + std::to_string(id) + " outside universe of size " +
                                    std::to_string(universe.size()));
        }
        const auto [code, length] = element_code(id);
        out.append(BitString::from_word(code, length));
    }
    out.push_back(false);
    return out;
}

DecodedCore decode_core(const BitString& bits, const Universe& universe, std::size_t offset) {
    DecodedCore out;
    std::size_t pos = offset;
    auto need = [&](std::size_t count) {
        if (pos + count > bits.size()) throw ParseError("truncated core at bit " + std::to_string(bits.size()));
    };
    for (;;) {
        need(1);
        if (!bits[pos++]) break;
        int zeros = 0;
        for (;;) {
            need(1);
            if (bits[pos]) break;
            ++zeros;
            ++pos;
            if (zeros > 30) throw ParseError("gamma code too long at bit " + std::to_string(pos));
        }
        need(static_cast<std::size_t>(zeros) + 1);
        std::uint64_t value = 0;
        for (int i = 0; i <= zeros; ++i) value = (value << 1) | (bits[pos++] ? 1U : 0U);
        const auto id = static_cast<std::int64_t>(value) - 1;
        if (id >= universe.size()) {
            throw ParseError("object id " + std::to_string(id) + " outside universe at bit " + std::to_string(pos));
        }
        out.expr.ids.push_back(static_cast<int>(id));
    }
    if (out.expr.ids.empty()) throw ParseError("empty core (output would be the empty set)");
    out.consumed = pos - offset;
    return out;
}

ParsedProgram parse_program(const BitString& program, const Marker& marker, const Universe& universe) {
    const std::size_t at = program.find(marker.bits());
    if (at == BitString::npos) throw ParseError("no marker occurrence");
    const std::size_t boundary = at + marker.bits().size();
    DecodedCore decoded = decode_core(program, universe, boundary);
    if (boundary + decoded.consumed != program.size()) {
        throw ParseError("surplus bits after core terminator");
    }
    return {program.substr(0, boundary), program.substr(boundary), std::move(decoded.expr)};
}

ObjectSet execute(const BitString& program, const Universe& universe, const Marker& marker) {
    return parse_program(program, marker, universe).expr.evaluate();
}

ProgramTable::ProgramTable(Universe universe, Marker marker, int max_core_length)
    : universe_(std::move(universe)), marker_(std::move(marker)), max_core_length_(max_core_length) {}

ProgramTable ProgramTable::enumerate(Universe universe, Marker marker, int max_core_length) {
    if (max_core_length < 1 || max_core_length > kMaxCoreLength) {
        throw std::invalid_argument("core length bound must be in [1, " + std::to_string(kMaxCoreLength) +
                                    "], got " + std::to_string(max_core_length));
    }
    ProgramTable table(std::move(universe), std::move(marker), max_core_length);

    std::vector<ElementCode> elements;
    for (int id = 0; id < table.universe_.size(); ++id) elements.push_back(element_code(id));

    // Depth-first over element lists; a list of `length` bits becomes a core
    // of length + 1 once terminated.
    struct Frame {
        std::uint64_t code;
        int length;
        std::uint32_t mask;
    };
    std::vector<Frame> stack{{0, 0, 0}};
    while (!stack.empty()) {
        const Frame frame = stack.back();
        stack.pop_back();
        if (frame.mask != 0) table.cores_.push_back({frame.code << 1, frame.length + 1, ObjectSet(frame.mask)});
        for (int id = 0; id < static_cast<int>(elements.size()); ++id) {
            const auto [code, length] = elements[static_cast<std::size_t>(id)];
            if (frame.length + length + 1 > max_core_length) continue;
            stack.push_back({(frame.code << length) | code, frame.length + length,
                             frame.mask | (std::uint32_t{1} << id)});
        }
    }
    std::sort(table.cores_.begin(), table.cores_.end(), [](const CoreEntry& a, const CoreEntry& b) {
        return a.length != b.length ? a.length < b.length : a.code < b.code;
    });

    table.histogram_.resize(static_cast<std::size_t>(max_core_length) + 1);
    std::vector<std::map<std::uint32_t, std::uint64_t>> tally(table.histogram_.size());
    for (const CoreEntry& core : table.cores_) ++tally[static_cast<std::size_t>(core.length)][core.output.mask()];
    for (std::size_t length = 0; length < tally.size(); ++length) {
        for (const auto& [mask, count] : tally[length]) table.histogram_[length].push_back({mask, count});
    }
    return table;
}

std::uint64_t ProgramTable::count_covering(ObjectSet target, int length) const {
    if (length < 0 || length > max_core_length_) return 0;
    std::uint64_t total = 0;
    for (const MaskCount& mc : histogram_[static_cast<std::size_t>(length)]) {
        if (ObjectSet(mc.mask).includes(target)) total += mc.count;
    }
    return total;
}

std::vector<std::uint64_t> ProgramTable::covering_counts(ObjectSet target) const {
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_core_length_) + 1);
    for (int length = 0; length <= max_core_length_; ++length) {
        counts[static_cast<std::size_t>(length)] = count_covering(target, length);
    }
    return counts;
}

std::optional<int> ProgramTable::ground_core_length(ObjectSet target) const {
    for (int length = 1; length <= max_core_length_; ++length) {
        if (count_covering(target, length) > 0) return length;
    }
    return std::nullopt;
}

namespace {

int require_ground_core(const ProgramTable& table, ObjectSet target) {
    if (target.empty()) throw std::domain_error("target set must be non-empty");
    if (!table.universe().contains(target)) {
        throw std::domain_error("target " + target.to_string() + " outside universe");
    }
    const auto k0 = table.ground_core_length(target);
    if (!k0) {
        throw UnsatisfiableError("no core of length <= " + std::to_string(table.max_core_length()) +
                                 " covers " + target.to_string());
    }
    return *k0;
}

}  // namespace

int ground_length(const ProgramTable& table, ObjectSet target) {
    return table.marker().length() + require_ground_core(table, target);
}

DegeneracySpectrum multiplicity_spectrum(const ProgramTable& table, ObjectSet target, int max_excess) {
    if (max_excess < 0) throw std::domain_error("excess must be non-negative");
    const int k0 = require_ground_core(table, target);
    if (k0 + max_excess > table.max_core_length()) {
        throw BoundError("spectrum of " + target.to_string() + " to excess " + std::to_string(max_excess) +
                         " needs cores up to " + std::to_string(k0 + max_excess) + " bits; re-enumerate with " +
                         "a core length bound >= " + std::to_string(k0 + max_excess));
    }
    DegeneracySpectrum spectrum{k0, {}};
    for (int delta = 0; delta <= max_excess; ++delta) spectrum.counts.push_back(table.count_covering(target, k0 + delta));
    return spectrum;
}

void write_core_csv(const ProgramTable& table, std::ostream& out) {
    out << "core_bits,length,output_mask\n";
    for (const CoreEntry& core : table.cores()) {
        out << core.bits().str() << ',' << core.length << ',' << core.output.mask() << '\n';
    }
}

}  // namespace algothermo
