#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "wqo/membership.hpp"

using namespace wqo;
using testutil::for_all_binary_words;

namespace {

InsertionSystem sys(const std::string& csv) { return InsertionSystem::parse(csv); }

bool oracle(const std::string& u, const std::string& csv, std::size_t cap = 20) {
    SearchLimits limits;
    limits.oracle_word_len = cap;
    return closure_member(Word::parse(u), sys(csv), limits).has_value();
}

} // namespace

TEST_CASE("shuffle_pair") {
    CHECK(shuffle_pair(Word::parse(""), Word::parse("ab")) == std::set<Word>{Word::parse("ab")});
    CHECK(shuffle_pair(Word::parse("a"), Word::parse("b")) ==
          std::set<Word>{Word::parse("ab"), Word::parse("ba")});
    CHECK(shuffle_pair(Word::parse("ab"), Word::parse("ab")) ==
          std::set<Word>{Word::parse("aabb"), Word::parse("abab")});
    SearchLimits tight;
    tight.shuffle_total_len = 4;
    CHECK_THROWS_AS(shuffle_pair(Word::parse("abc"), Word::parse("ab"), tight), limit_error);
}

TEST_CASE("closure_member basics") {
    auto empty = closure_member(Word::parse(""), sys("ab"));
    REQUIRE(empty.has_value());
    CHECK(empty->copies.empty());

    auto two = closure_member(Word::parse("aabb"), sys("ab"));
    REQUIRE(two.has_value());
    CHECK(two->copies.size() == 2);
    CHECK(validate(*two, Word::parse("aabb"), sys("ab")));

    CHECK_FALSE(closure_member(Word::parse("abab"), sys("aabb")).has_value());
    // cross-check by listing the two-copy interleavings directly
    SearchLimits wide;
    wide.shuffle_total_len = 16;
    const auto both = shuffle_pair(Word::parse("aabb"), Word::parse("aabb"), wide);
    CHECK_FALSE(both.count(Word::parse("abab")));
}

TEST_CASE("closure_member on the worked example") {
    SearchLimits limits;
    limits.oracle_word_len = 40;
    const Word u = Word::parse("abaaababaabaaabaabaaaaabaaaabaaa");
    auto cert = closure_member(u, sys("abaaabaa"), limits);
    REQUIRE(cert.has_value());
    CHECK(cert->copies.size() == 4);
    CHECK(validate(*cert, u, sys("abaaabaa")));
}

TEST_CASE("closure_member respects its length guard") {
    SearchLimits limits;
    limits.oracle_word_len = 4;
    CHECK_THROWS_AS(closure_member(Word::parse("aabab"), sys("ab"), limits), limit_error);
}

TEST_CASE("closure_enumerate") {
    auto lens2 = closure_enumerate(sys("ab"), 2);
    CHECK(lens2 == std::vector<Word>{Word::parse(""), Word::parse("ab")});

    auto lens4 = closure_enumerate(sys("ab"), 4);
    CHECK(lens4 == std::vector<Word>{Word::parse(""), Word::parse("ab"), Word::parse("aabb"),
                                     Word::parse("abab")});

    auto unary = closure_enumerate(sys("a"), 3);
    CHECK(unary == std::vector<Word>{Word::parse(""), Word::parse("a"), Word::parse("aa"),
                                     Word::parse("aaa")});

    SearchLimits tight;
    tight.enumerate_len = 4;
    CHECK_THROWS_AS(closure_enumerate(sys("ab"), 6, tight), limit_error);
}

TEST_CASE("certificates validate and count") {
    for (const std::string csv : {"ab", "aab", "ab,b", "aabb"}) {
        const auto members = closure_enumerate(sys(csv), 10);
        for (const auto& m : members) {
            auto cert = closure_member(m, sys(csv));
            REQUIRE(cert.has_value());
            CHECK(validate(*cert, m, sys(csv)));
            // letter counts of the copies add up to the counts of m
            for (char s : std::string("ab")) {
                std::size_t total = 0;
                for (const auto& c : cert->copies) total += count(c.word, s);
                CHECK(total == count(m, s));
            }
        }
    }
}

TEST_CASE("closure is closed under one more insertion") {
    for (const std::string csv : {"ab", "ab,b"}) {
        const auto members = closure_enumerate(sys(csv), 10);
        for (const auto& u : members) {
            for (const auto& w : sys(csv).words()) {
                if (u.size() + w.size() > 12) continue;
                SearchLimits wide;
                wide.shuffle_total_len = 12;
                for (const auto& v : shuffle_pair(u, w, wide))
                    CHECK(closure_member(v, sys(csv)).has_value());
            }
        }
    }
}

TEST_CASE("member_fs6 pinned examples") {
    CHECK(member_fs6(Word::parse(""), 2, 2));
    CHECK(member_fs6(Word::parse("aabb"), 2, 2));
    CHECK_FALSE(member_fs6(Word::parse("abab"), 2, 2));
    CHECK_THROWS_AS(member_fs6(Word::parse("ab"), 1, 2), error);
}

TEST_CASE("member_fs6 matches the oracle") {
    const std::pair<long, long> regimes[] = {{2, 2}, {2, 3}, {3, 2}};
    for (auto [h, k] : regimes) {
        const std::string w = std::string(h, 'a') + std::string(k, 'b');
        for_all_binary_words(10, [&](const std::string& s) {
            CAPTURE(s, h, k);
            CHECK(member_fs6(Word::parse(s), h, k) == oracle(s, w));
        });
    }
}

TEST_CASE("member_fs6 accepts only whole copies") {
    // the prefix condition applied to the full word pins both remainders to 0
    for_all_binary_words(10, [&](const std::string& s) {
        if (!member_fs6(Word::parse(s), 2, 3)) return;
        const auto qr = quot_rem(Word::parse(s), 2, 3);
        CHECK(qr.r_a == 0);
        CHECK(qr.r_b == 0);
        CHECK(qr.q_a == qr.q_b);
    });
}

TEST_CASE("member_carac pinned examples") {
    CHECK(member_carac(Word::parse(""), Word::parse("ab")));
    CHECK(member_carac(Word::parse("abab"), Word::parse("ab")));
    CHECK_FALSE(member_carac(Word::parse("abba"), Word::parse("ab")));
    CHECK(member_carac(Word::parse("abaaababaabaaabaabaaaaabaaaabaaa"), Word::parse("abaaabaa")));
    CHECK_THROWS_AS(member_carac(Word::parse("ab"), Word::parse("aabb")), error);  // bad word
    CHECK_THROWS_AS(member_carac(Word::parse("ab"), Word::parse("aaa")), error);   // pure power
}

TEST_CASE("member_carac matches the oracle") {
    for (const std::string w : {"ab", "aab", "aba", "abaab", "ba", "bba"}) {
        for_all_binary_words(10, [&](const std::string& s) {
            CAPTURE(s, w);
            CHECK(member_carac(Word::parse(s), Word::parse(w)) == oracle(s, w));
        });
    }
}

TEST_CASE("member_pair_closed pinned examples") {
    CHECK(member_pair_closed(Word::parse(""), PairFamily::anb_an, 2));
    CHECK(member_pair_closed(Word::parse("aab"), PairFamily::anb_an, 2));
    CHECK_FALSE(member_pair_closed(Word::parse("aba"), PairFamily::anb_an, 2));
    CHECK(member_pair_closed(Word::parse("abb"), PairFamily::anb_b, 1));
    CHECK_THROWS_AS(member_pair_closed(Word::parse("ab"), PairFamily::anb_an, 0), error);
}

TEST_CASE("member_pair_closed matches the oracle") {
    const PairFamily families[] = {
        PairFamily::anb_an, PairFamily::ban_an, PairFamily::bna_bn, PairFamily::abn_bn,
        PairFamily::anb_a,  PairFamily::anb_b,  PairFamily::ban_a,  PairFamily::ban_b,
        PairFamily::bna_a,  PairFamily::bna_b,  PairFamily::abn_a,  PairFamily::abn_b,
    };
    for (PairFamily fam : families) {
        for (long n : {1L, 2L, 3L}) {
            const auto words = pair_family_words(fam, n);
            InsertionSystem system(words);
            for_all_binary_words(9, [&](const std::string& s) {
                CAPTURE(s, static_cast<int>(fam), n);
                CHECK(member_pair_closed(Word::parse(s), fam, n) ==
                      closure_member(Word::parse(s), system).has_value());
            });
        }
    }
}

TEST_CASE("necessary_form2 pinned examples") {
    CHECK(necessary_form2(Word::parse(""), 2, 1, 1));
    CHECK(necessary_form2(Word::parse("aabab"), 2, 1, 1));
    CHECK_FALSE(necessary_form2(Word::parse("ab"), 2, 1, 1));
    CHECK_THROWS_AS(necessary_form2(Word::parse("ab"), 1, 1, 1), error);
}

TEST_CASE("necessary_form2 holds on every closure member") {
    const long regimes[][3] = {{2, 1, 1}, {3, 1, 1}, {3, 2, 1}};
    for (const auto& r : regimes) {
        const long k = r[0], l = r[1], m = r[2];
        const std::string w = std::string(k, 'a') + "b" + std::string(l, 'a') + std::string(m, 'b');
        for (const auto& u : closure_enumerate(sys(w), 14)) {
            CAPTURE(u.str(), k, l, m);
            CHECK(necessary_form2(u, k, l, m));
        }
    }
}

TEST_CASE("insertion system rejects the empty word") {
    CHECK_THROWS_AS(sys(""), error);
    CHECK_THROWS_AS(sys("ab,"), error);
    CHECK(sys("ab,ab").words().size() == 1);
}
