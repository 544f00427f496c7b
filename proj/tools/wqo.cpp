// Command-line front end: every library operation behind one binary.
//
// Exit codes: 0 = decided/constructed, 1 = negative verdict (member/derive/
// decompose rejected), 2 = usage, parse, regime or resource-limit error.

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wqo/json.hpp"
#include "wqo/membership.hpp"
#include "wqo/order.hpp"
#include "wqo/sequences.hpp"
#include "wqo/structure.hpp"

using namespace wqo;

namespace {

struct Options {
    bool as_json = false;
    std::size_t max_word = 64;
    std::size_t max_oracle = 20;
    std::size_t max_enum = 16;
    SearchLimits limits() const {
        SearchLimits l;
        l.oracle_word_len = max_oracle;
        l.enumerate_len = max_enum;
        l.shuffle_total_len = std::max<std::size_t>(16, max_enum);
        if (const char* env = std::getenv("WQO_MEMO_BUDGET")) {
            const long v = std::atol(env);
            if (v > 0) l.memo_budget = static_cast<std::size_t>(v);
        }
        return l;
    }
};

Word parse_word(const std::string& text, const Options& opt) {
    if (text.size() > opt.max_word)
        throw limit_error("word exceeds the length limit (--max-word)");
    return Word::parse(text);
}

InsertionSystem parse_system(const std::string& csv, const Options& opt) {
    std::vector<Word> words;
    std::string cur;
    auto flush = [&] {
        words.push_back(parse_word(cur, opt));
        cur.clear();
    };
    for (char c : csv) {
        if (c == ',')
            flush();
        else
            cur.push_back(c);
    }
    flush();
    return InsertionSystem(std::move(words));
}

std::string positions_text(const std::vector<std::size_t>& ps) {
    std::ostringstream out;
    for (std::size_t t = 0; t < ps.size(); ++t) out << (t ? " " : "") << ps[t];
    return out.str();
}

void print_certificate(const ShuffleCertificate& cert) {
    for (std::size_t t = 0; t < cert.copies.size(); ++t)
        std::cout << "copy " << (t + 1) << ": " << cert.copies[t].word.str() << " at positions "
                  << positions_text(cert.copies[t].positions) << "\n";
}

// ---- closed forms, selected by the shape of the system ----

struct ClosedForm {
    std::string name;
    bool verdict = false;
};

std::optional<ClosedForm> run_closed_form(const Word& u, const InsertionSystem& system) {
    const auto& words = system.words();
    if (words.size() == 1) {
        const Word& w = words.front();
        const auto bs = detail::blocks_of(w.str());
        if (bs.size() == 2 && bs[0].symbol == 'a' && bs[1].symbol == 'b' && bs[0].len >= 2 &&
            bs[1].len >= 2) {
            return ClosedForm{"quotient-remainder form", member_fs6(u, static_cast<long>(bs[0].len),
                                                                    static_cast<long>(bs[1].len))};
        }
        const auto cls = classify(w);
        if (cls.good && cls.form->orientation != GoodForm::Orientation::empty) {
            if (cls.form->n >= 1)
                return ClosedForm{"slope characterization", member_carac(u, w)};
            // pure power s^p: members are exactly the powers s^{p k}
            const char s = w.str().front();
            const bool all = u.occurring().size() <= 1 && (u.empty() || u.str().front() == s);
            return ClosedForm{"pure power", all && u.size() % w.size() == 0};
        }
        return std::nullopt;
    }
    if (words.size() == 2) {
        const std::size_t longest = std::max(words[0].size(), words[1].size());
        for (long n = 1; n <= static_cast<long>(longest); ++n) {
            for (int f = 0; f < 12; ++f) {
                const auto family = static_cast<PairFamily>(f);
                auto expect = pair_family_words(family, n);
                InsertionSystem probe(expect);
                if (probe.words() == words)
                    return ClosedForm{"pair family", member_pair_closed(u, family, n)};
            }
        }
    }
    return std::nullopt;
}

// ---- subcommands ----

int cmd_classify(const std::string& word, const Options& opt) {
    const Word w = parse_word(word, opt);
    const auto cls = classify(w);
    if (opt.as_json) {
        std::cout << classification_json(cls).dump() << "\n";
        return 0;
    }
    if (cls.good) {
        const GoodForm& g = *cls.form;
        if (g.orientation == GoodForm::Orientation::empty) {
            std::cout << "good (empty)\n";
        } else {
            std::cout << "good (" << to_string(g.orientation) << ", i=" << g.i << ", n=" << g.n
                      << ", e=" << g.e << ", f=" << g.f << ")\n";
        }
    } else {
        const BadWitness& bw = *cls.witness;
        switch (bw.form) {
            case BadWitness::Form::form1:
                std::cout << "bad (form 1, k=" << bw.k << ", h=" << bw.h << ") via "
                          << to_string(bw.variant) << " at [" << bw.start << "," << bw.end << "]\n";
                break;
            case BadWitness::Form::form2:
                std::cout << "bad (form 2, k=" << bw.k << ", l=" << bw.l << ", m=" << bw.m
                          << ") via " << to_string(bw.variant) << " at [" << bw.start << ","
                          << bw.end << "]\n";
                break;
            case BadWitness::Form::ternary:
                std::cout << "bad (ternary)\n";
                break;
        }
    }
    return 0;
}

int cmd_member(const std::string& word, const std::string& system_csv, const std::string& method,
               const Options& opt) {
    const Word u = parse_word(word, opt);
    const InsertionSystem system = parse_system(system_csv, opt);

    std::optional<ShuffleCertificate> cert;
    std::optional<bool> oracle_verdict;
    std::optional<ClosedForm> closed;

    if (method == "oracle" || method == "both") {
        cert = closure_member(u, system, opt.limits());
        oracle_verdict = cert.has_value();
        if (cert && !validate(*cert, u, system)) throw error("certificate failed validation");
    }
    if (method == "closed" || method == "both") {
        closed = run_closed_form(u, system);
        if (!closed) throw error("no closed form applies to this system");
    }
    if (oracle_verdict && closed && *oracle_verdict != closed->verdict)
        throw error("closed form disagrees with the oracle");

    const bool verdict = oracle_verdict ? *oracle_verdict : closed->verdict;
    if (opt.as_json) {
        json j{{"verdict", verdict ? "accepted" : "rejected"}, {"method", method}};
        if (cert && verdict) {
            j["certificate"] = *cert;
            j["copies"] = cert->copies.size();
        }
        if (closed) j["closed_form"] = closed->name;
        std::cout << j.dump() << "\n";
    } else if (verdict) {
        std::cout << "accepted";
        if (cert) std::cout << ", x = " << cert->copies.size();
        if (closed) std::cout << " (" << closed->name << ")";
        std::cout << "\n";
        if (cert) print_certificate(*cert);
    } else {
        std::cout << "rejected\n";
    }
    return verdict ? 0 : 1;
}

int cmd_derive(const std::string& from, const std::string& to, const std::string& system_csv,
               const Options& opt) {
    const Word u = parse_word(from, opt);
    const Word v = parse_word(to, opt);
    const InsertionSystem system = parse_system(system_csv, opt);
    const auto cert = derives(u, v, system, opt.limits());
    if (opt.as_json) {
        json j{{"verdict", cert ? "derivable" : "not derivable"}};
        if (cert) j["certificate"] = *cert;
        std::cout << j.dump() << "\n";
    } else if (cert) {
        std::cout << "derivable\n";
        std::cout << "embedding: " << positions_text(cert->embedding.map) << "\n";
        std::cout << "difference: " << cert->difference.str() << "\n";
        print_certificate(cert->difference_certificate);
    } else {
        std::cout << "not derivable\n";
    }
    return cert ? 0 : 1;
}

int cmd_badseq(const std::string& word, long count, const Options& opt) {
    const Word w = parse_word(word, opt);
    const auto seq = badseq_for(w, count);
    if (opt.as_json) {
        json j{{"word", w}, {"sequence", seq}};
        std::cout << j.dump() << "\n";
        return 0;
    }
    for (std::size_t t = 0; t < seq.size(); ++t)
        std::cout << "S_" << (t + 1) << " = " << seq[t].word.str() << " (steps=" << seq[t].steps
                  << ")\n";
    return 0;
}

int cmd_probe(const std::string& system_csv, std::size_t max_len, long target, const Options& opt) {
    const InsertionSystem system = parse_system(system_csv, opt);
    SearchLimits limits = opt.limits();
    limits.enumerate_len = std::max(limits.enumerate_len, max_len);
    const auto report = probe_antichain(system, max_len, target, limits);
    if (opt.as_json) {
        std::cout << probe_report_json(report).dump() << "\n";
        return 0;
    }
    std::cout << "closure size: " << report.closure.size() << "\n";
    std::cout << "matrix reflexive: " << (report.reflexive ? "yes" : "no")
              << ", transitive: " << (report.transitive ? "yes" : "no") << "\n";
    std::cout << "minimal elements:";
    for (const auto& w : report.minimal_elements)
        std::cout << " " << (w.empty() ? "(empty)" : w.str());
    std::cout << "\n";
    std::cout << "antichain (size " << report.antichain.size() << "):";
    for (const auto& w : report.antichain) std::cout << " " << (w.empty() ? "(empty)" : w.str());
    std::cout << "\n";
    return 0;
}

int cmd_partition(const std::string& word, const std::string& system_word, const Options& opt) {
    const Word u = parse_word(word, opt);
    const Word w = parse_word(system_word, opt);
    const auto part = partition_sets(u, w);
    const Word trace = trace_word(u, part);
    if (opt.as_json) {
        json j = part;
        json copies = json::array();
        for (std::size_t i = 1; i <= part.x; ++i) copies.push_back(extract_copy(u, part, i));
        j["copies"] = copies;
        j["trace"] = trace;
        std::cout << j.dump() << "\n";
        return 0;
    }
    std::cout << "x = " << part.x << "\n";
    for (std::size_t i = 1; i <= part.x; ++i) {
        std::cout << "P(" << i << ") = {" << positions_text(part.sets[i - 1]) << "}"
                  << "  copy = " << extract_copy(u, part, i).str() << "\n";
    }
    std::cout << "trace = " << trace.str() << "\n";
    return 0;
}

int cmd_decompose(const std::string& word, const std::string& kind, const std::string& base,
                  long n, long m, const Options& opt) {
    const Word u = parse_word(word, opt);
    if (kind == "three") {
        const auto d = decompose_three(u, m);
        if (opt.as_json) {
            std::cout << json(d).dump() << "\n";
        } else {
            std::cout << "w1 = " << d.w1.str() << "\nw2 = " << d.w2.str()
                      << "\nw3 = " << d.w3.str() << "\ncopy bound = " << d.copy_bound << "\n";
        }
        return 0;
    }
    const Word w = parse_word(base, opt);
    if (kind == "one") {
        const auto d = check_decomp1(u, w, n, m, opt.limits());
        if (!d) {
            std::cout << (opt.as_json ? "{\"verdict\":\"rejected\"}" : "no decomposition") << "\n";
            return 1;
        }
        if (opt.as_json) {
            json j = *d;
            j["verdict"] = "accepted";
            std::cout << j.dump() << "\n";
        } else {
            std::cout << "u1 = " << d->u1.str() << "\nu2 = " << d->u2.str()
                      << "\nu3 = " << d->u3.str() << "\nu4 = " << d->u4.str() << "\n";
            std::cout << "conditions: all 7 hold\n";
        }
        return 0;
    }
    if (kind == "two") {
        const auto d = check_decomp2(u, w, n, opt.limits());
        if (!d) {
            std::cout << (opt.as_json ? "{\"verdict\":\"rejected\"}" : "no decomposition") << "\n";
            return 1;
        }
        if (opt.as_json) {
            json j = *d;
            j["verdict"] = "accepted";
            std::cout << j.dump() << "\n";
        } else {
            std::cout << "u1 = " << d->u1.str() << "\nu2 = " << d->u2.str()
                      << "\nu3 = " << d->u3.str() << "\nu4 = " << d->u4.str()
                      << "\nu5 = " << d->u5.str() << "\nu6 = " << d->u6.str()
                      << "\ndelta = " << d->delta << "\n";
            std::cout << "conditions: all 9 hold\n";
        }
        return 0;
    }
    throw error("unknown decomposition kind: " + kind);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"decision procedures for iterated-shuffle closures and their derivation order"};
    app.require_subcommand(1);

    Options opt;
    app.add_flag("--json", opt.as_json, "emit JSON instead of text");
    app.add_option("--max-word", opt.max_word, "word length limit (default 64)");
    app.add_option("--max-oracle", opt.max_oracle, "exact-search word length limit (default 20)");
    app.add_option("--max-enum", opt.max_enum, "enumeration length limit (default 16)");

    std::string word, second, system_csv, method = "oracle", kind, base;
    long count = 2, target = 3, n = 1, m = 1;
    std::size_t max_len = 8;

    auto* classify_cmd = app.add_subcommand("classify", "good/bad verdict with witness or form");
    classify_cmd->add_option("word", word)->required();

    auto* member_cmd = app.add_subcommand("member", "closure membership");
    member_cmd->add_option("word", word)->required();
    member_cmd->add_option("--system", system_csv, "comma-separated system words")->required();
    member_cmd->add_option("--method", method)->check(CLI::IsMember({"oracle", "closed", "both"}));

    auto* derive_cmd = app.add_subcommand("derive", "derivation-order comparison");
    derive_cmd->add_option("from", word)->required();
    derive_cmd->add_option("to", second)->required();
    derive_cmd->add_option("--system", system_csv)->required();

    auto* badseq_cmd = app.add_subcommand("badseq", "antichain words inside a bad word's closure");
    badseq_cmd->add_option("word", word)->required();
    badseq_cmd->add_option("--count", count)->check(CLI::PositiveNumber);

    auto* probe_cmd = app.add_subcommand("probe", "closure slice, order matrix, antichain search");
    probe_cmd->add_option("--system", system_csv)->required();
    probe_cmd->add_option("--max-len", max_len);
    probe_cmd->add_option("--target", target)->check(CLI::PositiveNumber);

    auto* partition_cmd = app.add_subcommand("partition", "copy-marking position sets");
    partition_cmd->add_option("u", word)->required();
    partition_cmd->add_option("--word", base, "system word")->required();

    auto* decompose_cmd = app.add_subcommand("decompose", "factorizations behind the closed forms");
    decompose_cmd->add_option("word", word)->required();
    decompose_cmd->add_option("--kind", kind)->required()->check(CLI::IsMember({"three", "one", "two"}));
    decompose_cmd->add_option("--w", base, "base word (kinds one/two)");
    decompose_cmd->add_option("--n", n);
    decompose_cmd->add_option("--m", m);

    for (auto* sub : app.get_subcommands({}))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_name() == "CallForHelp" ? 0 : 2;
    }

    try {
        if (classify_cmd->parsed()) return cmd_classify(word, opt);
        if (member_cmd->parsed()) return cmd_member(word, system_csv, method, opt);
        if (derive_cmd->parsed()) return cmd_derive(word, second, system_csv, opt);
        if (badseq_cmd->parsed()) return cmd_badseq(word, count, opt);
        if (probe_cmd->parsed()) return cmd_probe(system_csv, max_len, target, opt);
        if (partition_cmd->parsed()) return cmd_partition(word, base, opt);
        if (decompose_cmd->parsed()) return cmd_decompose(word, kind, base, n, m, opt);
    } catch (const limit_error& e) {
        std::cerr << "limit error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
