#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wqo/classify.hpp"
#include "wqo/membership.hpp"
#include "wqo/order.hpp"
#include "wqo/word.hpp"

namespace wqo {

/// A closure member together with its derivation length: the word is
/// reachable from the empty word in exactly `steps` insertions.
struct StepCountedWord {
    Word word;
    long steps = 0;
};

/// One lift: multiply a symbol power onto every sequence word, prefix- or
/// suffix-side, `steps` many times per word.
struct LiftStep {
    enum class Side : std::uint8_t { prefix, suffix };
    Side side = Side::suffix;
    char symbol = 'b';
    long power = 1;
};

/// Recipe for building antichain words inside the closure of a bad word:
/// a core family, the lifts for the surrounding blocks, and the symmetry
/// variant mapping the construction back onto the target word.
struct BadSequenceSpec {
    enum class Core : std::uint8_t { form1, form2 };
    Core core = Core::form1;
    long h = 0, k = 0, l = 0, m = 0;  // form1 uses (h, k); form2 uses (k, l, m)
    std::vector<LiftStep> lifts;      // applied in order, innermost block first
    Variant variant = Variant::identity;
};

/// S_n for the two-block word a^h b^k (h, k >= 2):
/// a^h (a^{2h} b^{2k}) (a b a^{h-1} b^{k-1})^n (a^{2h} b^{2k}) b^k.
inline StepCountedWord badseq_form1(long h, long k, long n) {
    if (h < 2 || k < 2 || n < 1) throw error("badseq_form1 requires h, k >= 2 and n >= 1");
    std::string s(static_cast<std::size_t>(h), 'a');
    s += std::string(static_cast<std::size_t>(2 * h), 'a') + std::string(static_cast<std::size_t>(2 * k), 'b');
    for (long t = 0; t < n; ++t)
        s += "ab" + std::string(static_cast<std::size_t>(h - 1), 'a') + std::string(static_cast<std::size_t>(k - 1), 'b');
    s += std::string(static_cast<std::size_t>(2 * h), 'a') + std::string(static_cast<std::size_t>(2 * k), 'b');
    s += std::string(static_cast<std::size_t>(k), 'b');
    StepCountedWord out{Word::parse(s), 0};
    out.steps = static_cast<long>(s.size()) / (h + k);
    return out;
}

/// S_n for the four-block word a^k b a^l b^m (k > l >= 1, m >= 1):
/// a^k b a^l a^k b a^l b^m (a^k b^{m+1} a^l)^n a^k b a^l b^m b^m.
inline StepCountedWord badseq_form2(long k, long l, long m, long n) {
    if (!(k > l && l >= 1 && m >= 1 && n >= 1))
        throw error("badseq_form2 requires k > l >= 1, m >= 1 and n >= 1");
    const std::string ak(static_cast<std::size_t>(k), 'a');
    const std::string al(static_cast<std::size_t>(l), 'a');
    const std::string bm(static_cast<std::size_t>(m), 'b');
    std::string s = ak + "b" + al;
    s += ak + "b" + al + bm;
    for (long t = 0; t < n; ++t) s += ak + bm + "b" + al;
    s += ak + "b" + al + bm;
    s += bm;
    StepCountedWord out{Word::parse(s), 0};
    out.steps = static_cast<long>(s.size()) / (k + 1 + l + m);
    return out;
}

/// Transport a sequence from the closure of {u} into the closure of
/// {u s^power}: word_n gains (s^power)^{steps_n} on the right.
///
/// Membership always transports. Pairwise incomparability transports only
/// when no word ends with the lifted symbol, so lists of two or more words
/// are guarded; a single word is not (nothing to keep incomparable).
inline std::vector<StepCountedWord> lift_suffix(const std::vector<StepCountedWord>& seq, char s,
                                                long power) {
    if (power < 1) throw error("lift power must be positive");
    long prev = 0;
    std::vector<StepCountedWord> out;
    for (const auto& entry : seq) {
        if (entry.word.empty()) throw error("cannot lift the empty word");
        if (seq.size() >= 2 && entry.word.str().back() == s)
            throw error("suffix lift requires words not ending with the lifted symbol");
        if (entry.steps <= prev && !out.empty())
            throw error("lift requires strictly increasing step counts");
        prev = entry.steps;
        std::string grown = entry.word.str() +
                            std::string(static_cast<std::size_t>(power * entry.steps), s);
        out.push_back({Word(grown, entry.word.alphabet()), entry.steps});
    }
    return out;
}

/// Mirror image of lift_suffix: word_n gains (s^power)^{steps_n} on the left.
inline std::vector<StepCountedWord> lift_prefix(const std::vector<StepCountedWord>& seq, char s,
                                                long power) {
    if (power < 1) throw error("lift power must be positive");
    long prev = 0;
    std::vector<StepCountedWord> out;
    for (const auto& entry : seq) {
        if (entry.word.empty()) throw error("cannot lift the empty word");
        if (seq.size() >= 2 && entry.word.str().front() == s)
            throw error("prefix lift requires words not beginning with the lifted symbol");
        if (entry.steps <= prev && !out.empty())
            throw error("lift requires strictly increasing step counts");
        prev = entry.steps;
        std::string grown = std::string(static_cast<std::size_t>(power * entry.steps), s) +
                            entry.word.str();
        out.push_back({Word(grown, entry.word.alphabet()), entry.steps});
    }
    return out;
}

/// Work out the construction recipe for a bad binary word: find a bad factor
/// aligned on whole letter blocks, read off the core parameters, and record
/// the surrounding blocks as lifts (innermost first).
inline BadSequenceSpec bad_sequence_plan(const Word& w) {
    const auto cls = classify(w);
    if (cls.good) throw error("bad_sequence_plan requires a bad word");
    const BadWitness& wit = *cls.witness;
    if (wit.form == BadWitness::Form::ternary)
        throw error("bad_sequence_plan requires a binary bad word");

    BadSequenceSpec plan;
    plan.variant = wit.variant;
    if (wit.form == BadWitness::Form::form1) {
        plan.core = BadSequenceSpec::Core::form1;
        // the witness factor is a^k b^h in the definition's reading; the
        // generator takes the a-exponent first
        plan.h = wit.k;
        plan.k = wit.h;
    } else {
        plan.core = BadSequenceSpec::Core::form2;
        plan.k = wit.k;
        plan.l = wit.l;
        plan.m = wit.m;
    }

    // the variant image around the factor, as alternating blocks, with the
    // word's two symbols normalized to the roles a and b
    const std::string occ = w.occurring();
    const char ra = occ[0], rb = occ[1];
    std::string image = w.str();
    for (char& c : image) c = (c == ra) ? 'a' : 'b';
    if (wit.variant == Variant::reverse || wit.variant == Variant::exchange_reverse)
        image.assign(image.rbegin(), image.rend());
    if (wit.variant == Variant::exchange || wit.variant == Variant::exchange_reverse)
        image = detail::exchanged(image, 'a', 'b');

    const auto before = detail::blocks_of(image.substr(0, wit.start - 1));
    const auto after = detail::blocks_of(image.substr(wit.end));
    for (const auto& blk : after)
        plan.lifts.push_back({LiftStep::Side::suffix, blk.symbol, static_cast<long>(blk.len)});
    for (auto it = before.rbegin(); it != before.rend(); ++it)
        plan.lifts.push_back({LiftStep::Side::prefix, it->symbol, static_cast<long>(it->len)});
    return plan;
}

/// Generate `how_many` pairwise-incomparable candidates inside the closure
/// of {w} for a bad binary w. Incomparability is asserted by tests through
/// derives; membership of every output is the caller's to re-check (and is
/// re-checked in the test suites).
inline std::vector<StepCountedWord> badseq_for(const Word& w, long how_many) {
    if (how_many < 1) throw error("badseq_for requires a positive count");
    const BadSequenceSpec plan = bad_sequence_plan(w);

    std::vector<StepCountedWord> seq;
    for (long n = 1; n <= how_many; ++n)
        seq.push_back(plan.core == BadSequenceSpec::Core::form1
                          ? badseq_form1(plan.h, plan.k, n)
                          : badseq_form2(plan.k, plan.l, plan.m, n));

    for (const auto& lift : plan.lifts)
        seq = lift.side == LiftStep::Side::suffix ? lift_suffix(seq, lift.symbol, lift.power)
                                                  : lift_prefix(seq, lift.symbol, lift.power);

    // map the construction back from the variant image onto w itself
    const std::string occ = w.occurring();
    const char ra = occ[0], rb = occ[1];
    for (auto& entry : seq) {
        std::string s = entry.word.str();
        if (plan.variant == Variant::exchange || plan.variant == Variant::exchange_reverse)
            s = detail::exchanged(s, 'a', 'b');
        if (plan.variant == Variant::reverse || plan.variant == Variant::exchange_reverse)
            s.assign(s.rbegin(), s.rend());
        for (char& c : s) c = (c == 'a') ? ra : rb;
        entry.word = Word(s, w.alphabet());
    }
    return seq;
}

/// Everything the antichain probe reports: the closure slice, the full
/// comparability matrix, its sanity flags, the minimal elements, and the
/// largest antichain found (capped at the search target).
struct ProbeReport {
    std::vector<Word> closure;
    std::vector<std::vector<bool>> matrix;
    bool reflexive = true;
    bool transitive = true;
    std::vector<Word> minimal_elements;
    std::vector<Word> antichain;
};

/// Enumerate the closure up to max_len, compute the comparability matrix,
/// and search for a pairwise-incomparable subset of size up to `target`.
inline ProbeReport probe_antichain(const InsertionSystem& system, std::size_t max_len, long target,
                                   const SearchLimits& limits = {}) {
    if (target < 1) throw error("probe target must be positive");
    ProbeReport report;
    report.closure = closure_enumerate(system, max_len, limits);

    SearchLimits derive_limits = limits;
    derive_limits.oracle_word_len = std::max(limits.oracle_word_len, max_len);
    report.matrix = comparability_matrix(report.closure, system, derive_limits);

    const std::size_t n = report.closure.size();
    for (std::size_t i = 0; i < n; ++i)
        if (!report.matrix[i][i]) report.reflexive = false;
    for (std::size_t i = 0; i < n && report.transitive; ++i)
        for (std::size_t j = 0; j < n && report.transitive; ++j) {
            if (!report.matrix[i][j]) continue;
            for (std::size_t k = 0; k < n; ++k)
                if (report.matrix[j][k] && !report.matrix[i][k]) {
                    report.transitive = false;
                    break;
                }
        }

    for (std::size_t j = 0; j < n; ++j) {
        bool minimal = true;
        for (std::size_t i = 0; i < n; ++i)
            if (i != j && report.matrix[i][j]) minimal = false;
        if (minimal) report.minimal_elements.push_back(report.closure[j]);
    }

    // exact search for the largest antichain of size <= target
    std::vector<std::size_t> chosen;
    std::vector<std::size_t> best;
    auto incomparable = [&](std::size_t i, std::size_t j) {
        return !report.matrix[i][j] && !report.matrix[j][i];
    };
    auto search = [&](auto&& self, std::size_t from, std::size_t need) -> bool {
        if (need == 0) return true;
        for (std::size_t cand = from; cand + need <= n; ++cand) {
            bool fits = true;
            for (std::size_t c : chosen)
                if (!incomparable(c, cand)) fits = false;
            if (!fits) continue;
            chosen.push_back(cand);
            if (self(self, cand + 1, need - 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    for (long size = std::min<long>(target, static_cast<long>(n)); size >= 1; --size) {
        chosen.clear();
        if (search(search, 0, static_cast<std::size_t>(size))) {
            best = chosen;
            break;
        }
    }
    for (std::size_t idx : best) report.antichain.push_back(report.closure[idx]);
    return report;
}

} // namespace wqo
