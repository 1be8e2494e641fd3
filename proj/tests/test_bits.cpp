#include <doctest.h>

#include <stdexcept>

#include "algothermo/bits.hpp"
#include "algothermo/random.hpp"

using algothermo::BitString;

TEST_CASE("bit strings parse, index and search") {
    const BitString b = BitString::from_string("0011010");
    CHECK(b.size() == 7);
    CHECK_FALSE(b[0]);
    CHECK(b[2]);
    CHECK(b.find(BitString::from_string("011")) == 1);
    CHECK(b.find(BitString::from_string("111")) == BitString::npos);
    CHECK(b.ends_with(BitString::from_string("010")));
    CHECK(b.substr(1, 3).str() == "011");
    CHECK((BitString::from_string("01") + BitString::from_string("1")).str() == "011");
    CHECK_THROWS_AS(BitString::from_string("012"), std::invalid_argument);
}

TEST_CASE("from_word writes the low bits most significant first") {
    CHECK(BitString::from_word(0b110, 3).str() == "110");
    CHECK(BitString::from_word(0b110, 5).str() == "00110");
    CHECK(BitString::from_word(0, 0).empty());
}

TEST_CASE("derived seeds are distinct and reproducible") {
    CHECK(algothermo::derive_seed(7, 0) == algothermo::derive_seed(7, 0));
    CHECK(algothermo::derive_seed(7, 0) != algothermo::derive_seed(7, 1));
    CHECK(algothermo::derive_seed(7, 0) != algothermo::derive_seed(8, 0));

    algothermo::Rng a(42);
    algothermo::Rng b(42);
    for (int i = 0; i < 100; ++i) {
        const double u = a.uniform();
        CHECK(u == b.uniform());
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    algothermo::Rng c(1);
    for (int i = 0; i < 1000; ++i) CHECK(c.below(3) < 3);
}
