#include "bergman/json_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace bergman::io {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string kind_name(TermKind kind) {
    switch (kind) {
        case TermKind::Constant: return "constant";
        case TermKind::Linear: return "linear";
        case TermKind::MaxOneT: return "max_one_t";
        case TermKind::LogOnePlusR2: return "log_one_plus_r2";
        case TermKind::NegLogLogER2: return "neg_log_log_er2";
        case TermKind::GaussR2: break;  // not serializable
    }
    throw std::invalid_argument("weight_to_json: term kind outside the file vocabulary");
}

const char* param_key(TermKind kind) {
    switch (kind) {
        case TermKind::Constant: return "c";
        case TermKind::Linear: return "slope";
        case TermKind::LogOnePlusR2: return "eps";
        case TermKind::NegLogLogER2: return "coeff";
        default: return nullptr;
    }
}

TermKind kind_from_name(const std::string& name) {
    if (name == "constant") return TermKind::Constant;
    if (name == "linear") return TermKind::Linear;
    if (name == "max_one_t") return TermKind::MaxOneT;
    if (name == "log_one_plus_r2") return TermKind::LogOnePlusR2;
    if (name == "neg_log_log_er2") return TermKind::NegLogLogER2;
    throw std::invalid_argument("weight_from_json: unknown term kind '" + name + "'");
}

json term_to_json(const Term& term) {
    json j;
    j["kind"] = kind_name(term.kind);
    if (const char* key = param_key(term.kind)) j[key] = term.param;
    if (std::isfinite(term.t_min)) j["t_min"] = term.t_min;
    if (std::isfinite(term.t_max)) j["t_max"] = term.t_max;
    return j;
}

Term term_from_json(const json& j) {
    Term term;
    term.kind = kind_from_name(j.at("kind").get<std::string>());
    if (const char* key = param_key(term.kind)) term.param = j.at(key).get<double>();
    term.t_min = j.contains("t_min") ? j["t_min"].get<double>() : -kInf;
    term.t_max = j.contains("t_max") ? j["t_max"].get<double>() : kInf;
    return term;
}

json weight_to_obj(const RadialWeight& weight) {
    json j;
    j["n"] = weight.dimension;
    j["terms"] = json::array();
    for (const Term& term : weight.profile.terms()) j["terms"].push_back(term_to_json(term));
    j["breakpoints"] = weight.profile.breakpoints();
    return j;
}

RadialWeight weight_from_obj(const json& j) {
    std::vector<Term> terms;
    for (const json& t : j.at("terms")) terms.push_back(term_from_json(t));
    std::vector<double> breaks = j.value("breakpoints", std::vector<double>{});
    return RadialWeight(RadialProfile(std::move(terms), std::move(breaks)),
                        j.at("n").get<int>());
}

json logreal_to_obj(const LogReal& x) {
    json j;
    j["sign"] = x.sign();
    if (!x.is_zero()) j["log"] = x.log_magnitude();
    return j;
}

LogReal logreal_from_obj(const json& j) {
    if (j.is_number()) return LogReal::from_double(j.get<double>());
    int sign = j.at("sign").get<int>();
    if (sign == 0) return LogReal::zero();
    return LogReal::from_log(sign, j.at("log").get<double>());
}

json sequence_to_obj(const WeightSequence& seq) {
    json j;
    j["weights"] = json::array();
    for (const RadialWeight& w : seq.weights) j["weights"].push_back(weight_to_obj(w));
    j["limit"] = weight_to_obj(seq.limit);
    return j;
}

WeightSequence sequence_from_obj(const json& j) {
    std::vector<RadialWeight> weights;
    for (const json& w : j.at("weights")) weights.push_back(weight_from_obj(w));
    if (weights.empty()) throw std::invalid_argument("sequence: no weights");
    RadialWeight limit = weight_from_obj(j.at("limit"));
    return WeightSequence{std::move(weights), std::move(limit)};
}

json series_to_obj(const ModeSeries& f) {
    json j;
    j["n"] = f.dimension();
    j["modes"] = json::array();
    for (const auto& [alpha, coeff] : f.modes()) {
        json m;
        m["alpha"] = alpha.parts;
        m["coeff"] = logreal_to_obj(coeff);
        j["modes"].push_back(m);
    }
    return j;
}

ModeSeries series_from_obj(const json& j) {
    ModeSeries f(j.at("n").get<int>());
    for (const json& m : j.at("modes")) {
        MultiIndex alpha;
        alpha.parts = m.at("alpha").get<std::vector<int>>();
        f.set(alpha, logreal_from_obj(m.at("coeff")));
    }
    return f;
}

}  // namespace

std::string weight_to_json(const RadialWeight& weight) {
    return weight_to_obj(weight).dump(2);
}

RadialWeight weight_from_json(std::string_view text) {
    return weight_from_obj(json::parse(text));
}

std::string sequence_to_json(const WeightSequence& seq) {
    return sequence_to_obj(seq).dump(2);
}

WeightSequence sequence_from_json(std::string_view text) {
    return sequence_from_obj(json::parse(text));
}

std::string series_to_json(const ModeSeries& f) { return series_to_obj(f).dump(2); }

ModeSeries series_from_json(std::string_view text) {
    return series_from_obj(json::parse(text));
}

std::string verdict_to_json(const quad::QuadVerdict& verdict) {
    json j;
    j["finite"] = verdict.finite;
    if (verdict.finite) {
        j["log_value"] = verdict.value.log_magnitude();
        j["sign"] = verdict.value.sign();
        j["log_abs_err"] = verdict.log_abs_err;
    } else {
        j["deficit"] = verdict.deficit;
    }
    return j.dump(2);
}

std::string instance_to_json(const counterexample::CounterexampleInstance& inst) {
    json j;
    j["n"] = inst.n;
    j["k_max"] = inst.k_max;
    j["weights"] = sequence_to_obj(inst.weights);
    j["levels"] = json::array();
    for (int k = 2; k <= inst.k_max + 1; ++k) {
        json level;
        level["k"] = k;
        level["N"] = inst.growth(k);
        level["C"] = inst.continuity(k);
        level["A"] = logreal_to_obj(inst.a_of(k));
        level["B"] = logreal_to_obj(inst.b_of(k));
        level["eps"] = logreal_to_obj(inst.eps_of(k));
        j["levels"].push_back(level);
    }
    // the limit's extra pieces, for completeness
    json tail;
    tail["k"] = inst.k_max + 2;
    tail["N"] = inst.growth(inst.k_max + 2);
    tail["C"] = inst.continuity(inst.k_max + 2);
    j["limit_tail"] = tail;
    j["f"] = series_to_obj(inst.f);
    return j.dump(2);
}

counterexample::CounterexampleInstance instance_from_json(std::string_view text) {
    json j = json::parse(text);
    counterexample::CounterexampleInstance inst;
    inst.n = j.at("n").get<int>();
    inst.k_max = j.at("k_max").get<int>();
    inst.weights = sequence_from_obj(j.at("weights"));
    for (const json& level : j.at("levels")) {
        inst.growth_n.push_back(level.at("N").get<int>());
        inst.continuity_c.push_back(level.at("C").get<double>());
        inst.inner.push_back(logreal_from_obj(level.at("A")));
        inst.outer.push_back(logreal_from_obj(level.at("B")));
        inst.eps.push_back(logreal_from_obj(level.at("eps")));
    }
    if (j.contains("limit_tail")) {
        inst.growth_n.push_back(j["limit_tail"].at("N").get<int>());
        inst.continuity_c.push_back(j["limit_tail"].at("C").get<double>());
    }
    inst.f = series_from_obj(j.at("f"));
    return inst;
}

WeightSequence sequence_from_file_text(std::string_view text) {
    json j = json::parse(text);
    if (j.contains("weights") && j["weights"].is_object())
        return sequence_from_obj(j["weights"]);  // counterexample instance
    return sequence_from_obj(j);
}

void write_file_atomic(const std::string& path, std::string_view contents) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace bergman::io
