#include "algothermo/bits.hpp"

#include <stdexcept>

namespace algothermo {

BitString BitString::from_string(std::string_view text) {
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bit string may only contain '0' and '1': \"" +
                                        std::string(text) + "\"");
        }
    }
    return BitString(std::string(text));
}

BitString BitString::from_word(std::uint64_t word, int length) {
    std::string bits(static_cast<std::size_t>(length), '0');
    for (int i = 0; i < length; ++i) {
        if ((word >> (length - 1 - i)) & 1U) bits[static_cast<std::size_t>(i)] = '1';
    }
    return BitString(std::move(bits));
}

BitString BitString::substr(std::size_t pos, std::size_t count) const {
    return BitString(bits_.substr(pos, count));
}

std::size_t BitString::find(const BitString& pattern, std::size_t from) const noexcept {
    return bits_.find(pattern.bits_, from);
}

bool BitString::ends_with(const BitString& suffix) const noexcept {
    return bits_.size() >= suffix.bits_.size() &&
           bits_.compare(bits_.size() - suffix.bits_.size(), suffix.bits_.size(), suffix.bits_) == 0;
}

}  // namespace algothermo
