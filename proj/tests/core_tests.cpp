#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "wqo/classify.hpp"
#include "wqo/word.hpp"

using namespace wqo;
using testutil::for_all_binary_words;

TEST_CASE("count") {
    CHECK(count(Word::parse(""), 'a') == 0);
    CHECK(count(Word::parse("abaaabaa"), 'a') == 6);
    CHECK(count(Word::parse("abaaabaa"), 'b') == 2);
    CHECK_THROWS_AS(count(Word::parse("ab"), 'z'), error);
}

TEST_CASE("exchange") {
    CHECK(exchange(Word::parse("")) == Word::parse(""));
    CHECK(exchange(Word::parse("aab")) == Word::parse("bba"));
    const Word u = Word::parse("abab");
    CHECK(exchange(exchange(u)) == u);
    CHECK_THROWS_AS(exchange(Word::parse("abc")), error);
}

TEST_CASE("reverse") {
    CHECK(reverse(Word::parse("")) == Word::parse(""));
    CHECK(reverse(Word::parse("aab")) == Word::parse("baa"));
    const Word u = Word::parse("abaaabaa");
    CHECK(reverse(reverse(u)) == u);
}

TEST_CASE("word parsing and alphabet") {
    const Word w = Word::parse("abc");
    CHECK(w.alphabet() == "abc");
    CHECK(w.occurring() == "abc");
    CHECK(Word::parse("bbb").alphabet() == "ab");
    CHECK_THROWS_AS(Word("ax", "ab"), error);
}

TEST_CASE("scan_bad_factor on the pinned words") {
    auto w1 = scan_bad_factor(Word::parse("aabb"));
    REQUIRE(w1.has_value());
    CHECK(w1->form == BadWitness::Form::form1);
    CHECK(w1->k == 2);
    CHECK(w1->h == 2);
    CHECK(w1->variant == Variant::identity);
    CHECK(w1->start == 1);
    CHECK(w1->end == 4);

    CHECK_FALSE(scan_bad_factor(Word::parse("abaaabaa")).has_value());

    auto w3 = scan_bad_factor(Word::parse("abc"));
    REQUIRE(w3.has_value());
    CHECK(w3->form == BadWitness::Form::ternary);

    auto w4 = scan_bad_factor(Word::parse("aabab"));
    REQUIRE(w4.has_value());
    CHECK(w4->form == BadWitness::Form::form2);
    CHECK(w4->k == 2);
    CHECK(w4->l == 1);
    CHECK(w4->m == 1);
}

TEST_CASE("witness factors spell what they claim") {
    for_all_binary_words(10, [](const std::string& s) {
        const auto hit = scan_bad_factor(Word::parse(s));
        if (!hit) return;
        std::string variant;
        switch (hit->variant) {
            case Variant::identity: variant = s; break;
            case Variant::reverse: variant = testutil::reversed(s); break;
            case Variant::exchange: variant = testutil::exchanged(s); break;
            case Variant::exchange_reverse: variant = testutil::exchanged(testutil::reversed(s)); break;
        }
        const std::string factor = variant.substr(hit->start - 1, hit->end - hit->start + 1);
        std::string expected;
        if (hit->form == BadWitness::Form::form1) {
            expected = std::string(hit->k, 'a') + std::string(hit->h, 'b');
            CHECK(hit->k >= 2);
            CHECK(hit->h >= 2);
        } else {
            REQUIRE(hit->form == BadWitness::Form::form2);
            expected = std::string(hit->k, 'a') + "b" + std::string(hit->l, 'a') + std::string(hit->m, 'b');
            CHECK(hit->k > hit->l);
            CHECK(hit->l >= 1);
            CHECK(hit->m >= 1);
        }
        CHECK(factor == expected);
    });
}

TEST_CASE("classify on the pinned words") {
    const auto empty = classify(Word::parse(""));
    REQUIRE(empty.good);
    CHECK(empty.form->orientation == GoodForm::Orientation::empty);

    const auto ex = classify(Word::parse("abaaabaa"));
    REQUIRE(ex.good);
    CHECK(ex.form->orientation == GoodForm::Orientation::a_type);
    CHECK(ex.form->i == 1);
    CHECK(ex.form->n == 3);
    CHECK(ex.form->e == 1);
    CHECK(ex.form->f == 2);

    CHECK_FALSE(classify(Word::parse("aabb")).good);
}

TEST_CASE("render_good_form on the pinned forms") {
    GoodForm empty;
    CHECK(render_good_form(empty) == Word::parse(""));

    GoodForm ex{GoodForm::Orientation::a_type, 1, 3, 1, 2};
    CHECK(render_good_form(ex) == Word::parse("abaaabaa"));

    GoodForm ba{GoodForm::Orientation::a_type, 0, 1, 0, 1};
    CHECK(render_good_form(ba) == Word::parse("ba"));

    GoodForm broken{GoodForm::Orientation::a_type, 3, 1, 0, 0};
    CHECK_THROWS_AS(render_good_form(broken), error);
}

TEST_CASE("four-variant symmetry of the classifier") {
    for_all_binary_words(12, [](const std::string& s) {
        const Word w = Word::parse(s);
        const bool good = classify(w).good;
        CHECK(classify(reverse(w)).good == good);
        CHECK(classify(exchange(w)).good == good);
        CHECK(classify(exchange(reverse(w))).good == good);
    });
}

TEST_CASE("classifier agrees with the naive factor enumeration") {
    for_all_binary_words(12, [](const std::string& s) {
        const bool bad = scan_bad_factor(Word::parse(s)).has_value();
        CHECK(bad == testutil::naive_bad(s));
    });
}

TEST_CASE("classifier agrees with the periodic-power factor test") {
    for_all_binary_words(12, [](const std::string& s) {
        CHECK(classify(Word::parse(s)).good == testutil::good_by_power_factor(s));
    });
}

TEST_CASE("two-pattern scan is equivalent to the two-form scan") {
    for_all_binary_words(12, [](const std::string& s) {
        const Word w = Word::parse(s);
        CHECK(scan_bad_factor(w).has_value() == has_minimal_bad_factor(w));
    });
}

TEST_CASE("good forms round-trip") {
    for_all_binary_words(12, [](const std::string& s) {
        const Word w = Word::parse(s);
        const auto cls = classify(w);
        if (!cls.good) return;
        REQUIRE(cls.form.has_value());
        CHECK(render_good_form(*cls.form) == w);
        CHECK(cls.form->i <= cls.form->n);
        CHECK(cls.form->f <= cls.form->n);
        if (cls.form->e == 0 && cls.form->orientation != GoodForm::Orientation::empty)
            CHECK(cls.form->n == std::max(cls.form->i, cls.form->f));
    });
}
