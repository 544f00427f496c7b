#pragma once

#include <json.hpp>

#include "wqo/classify.hpp"
#include "wqo/membership.hpp"
#include "wqo/order.hpp"
#include "wqo/sequences.hpp"
#include "wqo/structure.hpp"
#include "wqo/word.hpp"

namespace wqo {

using nlohmann::json;

inline void to_json(json& j, const Word& w) { j = w.str(); }
inline void from_json(const json& j, Word& w) { w = Word::parse(j.get<std::string>()); }

inline void to_json(json& j, const GoodForm& g) {
    j = json{{"orientation", to_string(g.orientation)}, {"i", g.i}, {"n", g.n}, {"e", g.e}, {"f", g.f}};
}

inline void from_json(const json& j, GoodForm& g) {
    const std::string o = j.at("orientation").get<std::string>();
    if (o == "a-type")
        g.orientation = GoodForm::Orientation::a_type;
    else if (o == "b-type")
        g.orientation = GoodForm::Orientation::b_type;
    else if (o == "empty")
        g.orientation = GoodForm::Orientation::empty;
    else
        throw error("unknown orientation: " + o);
    j.at("i").get_to(g.i);
    j.at("n").get_to(g.n);
    j.at("e").get_to(g.e);
    j.at("f").get_to(g.f);
    g.roles = "ab";
}

inline void to_json(json& j, const BadWitness& w) {
    json params = json::object();
    switch (w.form) {
        case BadWitness::Form::form1:
            params = {{"k", w.k}, {"h", w.h}};
            j = json{{"form", "form1"}};
            break;
        case BadWitness::Form::form2:
            params = {{"k", w.k}, {"l", w.l}, {"m", w.m}};
            j = json{{"form", "form2"}};
            break;
        case BadWitness::Form::ternary:
            j = json{{"form", "ternary"}};
            break;
    }
    j["parameters"] = params;
    j["start"] = w.start;
    j["end"] = w.end;
    j["variant"] = to_string(w.variant);
}

inline void from_json(const json& j, BadWitness& w) {
    const std::string f = j.at("form").get<std::string>();
    const json& params = j.at("parameters");
    if (f == "form1") {
        w.form = BadWitness::Form::form1;
        params.at("k").get_to(w.k);
        params.at("h").get_to(w.h);
    } else if (f == "form2") {
        w.form = BadWitness::Form::form2;
        params.at("k").get_to(w.k);
        params.at("l").get_to(w.l);
        params.at("m").get_to(w.m);
    } else if (f == "ternary") {
        w.form = BadWitness::Form::ternary;
    } else {
        throw error("unknown witness form: " + f);
    }
    j.at("start").get_to(w.start);
    j.at("end").get_to(w.end);
    const std::string v = j.at("variant").get<std::string>();
    if (v == "identity")
        w.variant = Variant::identity;
    else if (v == "reverse")
        w.variant = Variant::reverse;
    else if (v == "exchange")
        w.variant = Variant::exchange;
    else if (v == "exchange-reverse")
        w.variant = Variant::exchange_reverse;
    else
        throw error("unknown variant: " + v);
}

inline void to_json(json& j, const CertificateCopy& c) {
    j = json{{"word", c.word}, {"positions", c.positions}};
}

inline void from_json(const json& j, CertificateCopy& c) {
    j.at("word").get_to(c.word);
    j.at("positions").get_to(c.positions);
}

inline void to_json(json& j, const ShuffleCertificate& cert) { j = json{{"copies", cert.copies}}; }
inline void from_json(const json& j, ShuffleCertificate& cert) { j.at("copies").get_to(cert.copies); }

inline void to_json(json& j, const DerivationCertificate& cert) {
    j = json{{"embedding", cert.embedding.map},
             {"difference", cert.difference},
             {"difference_certificate", cert.difference_certificate}};
}

inline void from_json(const json& j, DerivationCertificate& cert) {
    j.at("embedding").get_to(cert.embedding.map);
    j.at("difference").get_to(cert.difference);
    j.at("difference_certificate").get_to(cert.difference_certificate);
}

inline void to_json(json& j, const CopyPartition& part) {
    j = json{{"x", part.x}, {"sets", part.sets}};
}

inline void from_json(const json& j, CopyPartition& part) {
    j.at("x").get_to(part.x);
    j.at("sets").get_to(part.sets);
}

inline void to_json(json& j, const StepCountedWord& s) {
    j = json{{"word", s.word}, {"steps", s.steps}};
}

inline void from_json(const json& j, StepCountedWord& s) {
    j.at("word").get_to(s.word);
    j.at("steps").get_to(s.steps);
}

inline void to_json(json& j, const Decomp1& d) {
    j = json{{"factors", json::array({d.u1, d.u2, d.u3, d.u4})},
             {"w", d.w},
             {"n", d.n},
             {"m", d.m},
             {"conditions", d.conditions}};
}

inline void to_json(json& j, const Decomp2& d) {
    j = json{{"factors", json::array({d.u1, d.u2, d.u3, d.u4, d.u5, d.u6})},
             {"w", d.w},
             {"n", d.n},
             {"delta", d.delta},
             {"conditions", d.conditions}};
}

inline void to_json(json& j, const ThreeDecomposition& d) {
    j = json{{"factors", json::array({d.w1, d.w2, d.w3})}, {"copy_bound", d.copy_bound}};
}

inline json probe_report_json(const ProbeReport& report) {
    return json{{"closure_size", report.closure.size()},
                {"minimal_elements", report.minimal_elements},
                {"antichain", report.antichain},
                {"antichain_size", report.antichain.size()}};
}

inline json classification_json(const Classification& cls) {
    json j{{"good", cls.good}};
    if (cls.form) j["form"] = *cls.form;
    if (cls.witness) j["witness"] = *cls.witness;
    return j;
}

} // namespace wqo
