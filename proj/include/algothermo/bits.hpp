#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace algothermo {

// Binary string, stored as '0'/'1' characters.
class BitString {
public:
    BitString() = default;

    // Throws std::invalid_argument on characters other than '0' and '1'.
    static BitString from_string(std::string_view text);

    // The low `length` bits of `word`, most significant first.
    static BitString from_word(std::uint64_t word, int length);

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }
    bool operator[](std::size_t i) const noexcept { return bits_[i] == '1'; }

    void push_back(bool bit) { bits_.push_back(bit ? '1' : '0'); }
    void append(const BitString& other) { bits_ += other.bits_; }

    BitString substr(std::size_t pos, std::size_t count = std::string::npos) const;

    // Index of the first occurrence of `pattern`, or npos.
    std::size_t find(const BitString& pattern, std::size_t from = 0) const noexcept;

    bool ends_with(const BitString& suffix) const noexcept;

    const std::string& str() const noexcept { return bits_; }

    friend BitString operator+(BitString lhs, const BitString& rhs) {
        lhs.append(rhs);
        return lhs;
    }
    friend bool operator==(const BitString&, const BitString&) = default;
    friend auto operator<=>(const BitString&, const BitString&) = default;

    static constexpr std::size_t npos = std::string::npos;

private:
    explicit BitString(std::string bits) : bits_(std::move(bits)) {}

    std::string bits_;
};

}  // namespace algothermo
