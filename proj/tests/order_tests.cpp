#include <catch2/catch_amalgamated.hpp>

#include <queue>
#include <set>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "wqo/order.hpp"

using namespace wqo;
using testutil::for_all_binary_words;

namespace {

InsertionSystem sys(const std::string& csv) { return InsertionSystem::parse(csv); }

SearchLimits wide(std::size_t n) {
    SearchLimits l;
    l.oracle_word_len = n;
    return l;
}

// independent of the library's shuffle code: plain recursive merge
std::set<std::string> interleavings(const std::string& x, const std::string& y) {
    if (x.empty()) return {y};
    if (y.empty()) return {x};
    std::set<std::string> out;
    for (const auto& s : interleavings(x.substr(1), y))
        out.insert(x[0] + s);
    for (const auto& s : interleavings(x, y.substr(1)))
        out.insert(y[0] + s);
    return out;
}

// step-by-step oracle: breadth-first closure of u under single insertions of w
std::set<std::string> step_reachable(const std::string& u, const std::string& w, std::size_t max_len) {
    std::set<std::string> seen{u};
    std::queue<std::string> todo;
    todo.push(u);
    while (!todo.empty()) {
        const std::string cur = todo.front();
        todo.pop();
        if (cur.size() + w.size() > max_len) continue;
        for (const auto& nxt : interleavings(cur, w))
            if (seen.insert(nxt).second) todo.push(nxt);
    }
    return seen;
}

} // namespace

TEST_CASE("embeddings pinned examples") {
    auto none = embeddings(Word::parse(""), Word::parse("ab"));
    REQUIRE(none.size() == 1);
    CHECK(none[0].map.empty());

    auto four = embeddings(Word::parse("ab"), Word::parse("aabb"));
    REQUIRE(four.size() == 4);
    CHECK(four[0].map == std::vector<std::size_t>{1, 3});
    CHECK(four[1].map == std::vector<std::size_t>{1, 4});
    CHECK(four[2].map == std::vector<std::size_t>{2, 3});
    CHECK(four[3].map == std::vector<std::size_t>{2, 4});

    CHECK(embeddings(Word::parse("ba"), Word::parse("ab")).empty());
}

TEST_CASE("embeddings are exactly the subsequence witnesses") {
    for_all_binary_words(6, [](const std::string& us) {
        const Word u = Word::parse(us);
        for_all_binary_words(7, [&](const std::string& vs) {
            const Word v = Word::parse(vs);
            std::set<std::vector<std::size_t>> seen;
            for (const auto& f : embeddings(u, v)) {
                CHECK(valid_embedding(f, u, v));
                CHECK(seen.insert(f.map).second);  // no duplicates
            }
            // empty iff u is not a subsequence of v
            std::size_t i = 0;
            for (char c : vs)
                if (i < us.size() && us[i] == c) ++i;
            CHECK((i == us.size()) == !seen.empty());
        });
    });
}

TEST_CASE("difference pinned examples") {
    const Word u = Word::parse("abab");
    Embedding id{{1, 2, 3, 4}};
    CHECK(difference(u, u, id) == Word::parse(""));

    Embedding f{{1, 3}};
    CHECK(difference(Word::parse("ab"), Word::parse("aabb"), f) == Word::parse("ab"));

    CHECK(difference(Word::parse(""), Word::parse("aabb"), Embedding{}) == Word::parse("aabb"));

    Embedding wrong{{2, 3}};
    CHECK_THROWS_AS(difference(Word::parse("ba"), Word::parse("aabb"), wrong), error);
}

TEST_CASE("derives pinned examples") {
    const Word u = Word::parse("abab");
    auto self = derives(u, u, sys("ab"));
    REQUIRE(self.has_value());
    CHECK(self->difference.empty());

    auto grow = derives(Word::parse("ab"), Word::parse("aabb"), sys("ab"));
    REQUIRE(grow.has_value());
    CHECK(grow->difference == Word::parse("ab"));
    CHECK(valid_embedding(grow->embedding, Word::parse("ab"), Word::parse("aabb")));

    // the first two antichain words for a^2 b^2 are incomparable
    const std::string s1 = "aa" "aaaabbbb" "abab" "aaaabbbb" "bb";
    const std::string s2 = "aa" "aaaabbbb" "abab" "abab" "aaaabbbb" "bb";
    CHECK_FALSE(derives(Word::parse(s1), Word::parse(s2), sys("aabb"), wide(32)).has_value());
    CHECK_FALSE(derives(Word::parse(s2), Word::parse(s1), sys("aabb"), wide(32)).has_value());
}

TEST_CASE("comparability_matrix pinned examples") {
    auto single = comparability_matrix({Word::parse("abab")}, sys("ab"));
    CHECK(single == std::vector<std::vector<bool>>{{true}});

    auto two = comparability_matrix({Word::parse(""), Word::parse("ab")}, sys("ab"));
    CHECK(two == std::vector<std::vector<bool>>{{true, true}, {false, true}});

    auto cross = comparability_matrix({Word::parse("ab"), Word::parse("ba")}, sys("ab"));
    CHECK(cross == std::vector<std::vector<bool>>{{true, false}, {false, true}});
}

TEST_CASE("derived relation is reflexive and transitive on closures") {
    for (const std::string csv : {"ab", "aabb", "ab,b"}) {
        const auto words = closure_enumerate(sys(csv), 10);
        const auto m = comparability_matrix(words, sys(csv));
        const std::size_t n = words.size();
        for (std::size_t i = 0; i < n; ++i) CHECK(m[i][i]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (!m[i][j]) continue;
                for (std::size_t k = 0; k < n; ++k)
                    if (m[j][k]) CHECK(m[i][k]);
            }
    }
}

TEST_CASE("derives implies monotone counts and a feasible combination") {
    const auto words = closure_enumerate(sys("ab,b"), 8);
    for (const auto& u : words)
        for (const auto& v : words) {
            auto cert = derives(u, v, sys("ab,b"));
            if (!cert) continue;
            for (char s : std::string("ab"))
                CHECK(count(v, s) >= count(u, s));
            // the certificate is itself the nonnegative combination
            std::size_t da = 0, db = 0;
            for (const auto& copy : cert->difference_certificate.copies) {
                da += count(copy.word, 'a');
                db += count(copy.word, 'b');
            }
            CHECK(da == count(v, 'a') - count(u, 'a'));
            CHECK(db == count(v, 'b') - count(u, 'b'));
        }
}

TEST_CASE("derivation certificates validate independently") {
    const auto words = closure_enumerate(sys("aab"), 9);
    for (const auto& u : words)
        for (const auto& v : words) {
            auto cert = derives(u, v, sys("aab"));
            if (!cert) continue;
            CHECK(valid_embedding(cert->embedding, u, v));
            CHECK(difference(u, v, cert->embedding) == cert->difference);
            CHECK(validate(cert->difference_certificate, cert->difference, sys("aab")));
        }
}

TEST_CASE("derives agrees with the step-by-step oracle") {
    for_all_binary_words(8, [&](const std::string& us) {
        const auto reach = step_reachable(us, "ab", 10);
        for_all_binary_words(10, [&](const std::string& vs) {
            const bool stepwise = reach.count(vs) > 0;
            const bool decided = derives(Word::parse(us), Word::parse(vs), sys("ab")).has_value();
            CAPTURE(us, vs);
            CHECK(stepwise == decided);
        });
    });
}

TEST_CASE("form-2 pruning never changes answers") {
    const std::string w = "aabab";
    for_all_binary_words(10, [&](const std::string& vs) {
        const bool direct = closure_member(Word::parse(vs), sys(w)).has_value();
        const bool via_derive = derives(Word::parse(""), Word::parse(vs), sys(w)).has_value();
        CHECK(direct == via_derive);
    });
}
