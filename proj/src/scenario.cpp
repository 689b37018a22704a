#include "mbcsim/scenario.hpp"

#include <algorithm>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>

using nlohmann::json;

namespace mbcsim {

namespace {

void expect_keys(const json& obj, std::initializer_list<const char*> allowed, const char* where) {
    if (!obj.is_object()) throw ParseError(std::string(where) + " must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const bool known =
            std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; });
        if (!known)
            throw ParseError("unknown key '" + it.key() + "' in " + where);
    }
}

template <class T>
T get_or(const json& obj, const char* key, T fallback, const char* where) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError("bad value for '" + std::string(key) + "' in " + where + ": " + e.what());
    }
}

int check_merit(int merit, int n, const char* what) {
    if (merit < 1 || merit > n)
        throw ValidationError(std::string(what) + " index " + std::to_string(merit) +
                              " out of range 1.." + std::to_string(n));
    return id_of_merit(merit);
}

BehaviorSpec behavior_from_json(const json& b, const char* where) {
    BehaviorSpec spec;
    expect_keys(b,
                {"noise_sigma", "noisy", "reverse", "one_sided", "reciprocal", "controversial",
                 "bonus"},
                where);
    spec.noise_sigma = get_or(b, "noise_sigma", 0.0, where);
    if (b.contains("noisy")) {
        for (const auto& e : b.at("noisy")) {
            expect_keys(e, {"reviewer", "sigma"}, "noisy entry");
            spec.noisy.emplace_back(get_or(e, "reviewer", 0, "noisy entry"),
                                    get_or(e, "sigma", 0.0, "noisy entry"));
        }
    }
    if (b.contains("reverse")) spec.reverse = get_or(b, "reverse", std::vector<int>{}, where);
    if (b.contains("one_sided")) {
        for (const auto& e : b.at("one_sided")) {
            expect_keys(e, {"reviewer", "ally"}, "one_sided entry");
            spec.one_sided.emplace_back(get_or(e, "reviewer", 0, "one_sided entry"),
                                        get_or(e, "ally", 0, "one_sided entry"));
        }
    }
    if (b.contains("reciprocal")) {
        for (const auto& e : b.at("reciprocal")) {
            if (!e.is_array() || e.size() != 2)
                throw ParseError("reciprocal entries must be [a, b] pairs");
            spec.reciprocal.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        }
    }
    if (b.contains("controversial")) {
        const auto& c = b.at("controversial");
        expect_keys(c, {"proposals", "delta_mu", "sigma", "plus_probability"}, "controversial");
        spec.controversial = get_or(c, "proposals", std::vector<int>{}, "controversial");
        spec.controversy_delta_mu = get_or(c, "delta_mu", 0.0, "controversial");
        spec.controversy_sigma = get_or(c, "sigma", 0.0, "controversial");
        spec.controversy_plus_probability = get_or(c, "plus_probability", 0.5, "controversial");
    }
    if (b.contains("bonus")) spec.bonus = get_or(b, "bonus", true, where);
    return spec;
}

json behavior_to_json(const BehaviorSpec& s) {
    json b = json::object();
    b["noise_sigma"] = s.noise_sigma;
    if (!s.noisy.empty()) {
        json arr = json::array();
        for (const auto& [pi, sigma] : s.noisy) arr.push_back({{"reviewer", pi}, {"sigma", sigma}});
        b["noisy"] = arr;
    }
    if (!s.reverse.empty()) b["reverse"] = s.reverse;
    if (!s.one_sided.empty()) {
        json arr = json::array();
        for (const auto& [r, a] : s.one_sided) arr.push_back({{"reviewer", r}, {"ally", a}});
        b["one_sided"] = arr;
    }
    if (!s.reciprocal.empty()) {
        json arr = json::array();
        for (const auto& [a, c] : s.reciprocal) arr.push_back(json::array({a, c}));
        b["reciprocal"] = arr;
    }
    if (!s.controversial.empty())
        b["controversial"] = {{"proposals", s.controversial},
                              {"delta_mu", s.controversy_delta_mu},
                              {"sigma", s.controversy_sigma},
                              {"plus_probability", s.controversy_plus_probability}};
    if (s.bonus) b["bonus"] = *s.bonus;
    return b;
}

json scenario_to_json(const Scenario& s) {
    json j;
    j["name"] = s.name;
    j["n"] = s.cfg.n_proposals;
    j["m"] = s.cfg.reviews_per_pi;
    j["acceptance_rate"] = s.cfg.acceptance_rate;
    j["utility_exponent"] = s.cfg.utility_exponent;
    j["bonus"] = s.cfg.bonus_enabled;
    j["mutual_review_allowed"] = s.cfg.mutual_review_allowed;
    j["seed"] = s.cfg.seed;
    j["replications"] = s.replications;
    j["workers"] = s.workers;
    switch (s.kind) {
        case ExperimentKind::funding: j["experiment"] = "funding"; break;
        case ExperimentKind::delta: j["experiment"] = "delta"; break;
        case ExperimentKind::accuracy: j["experiment"] = "accuracy"; break;
    }
    if (s.kind == ExperimentKind::delta) {
        j["paired"] = s.paired;
        j["also_unpaired"] = s.also_unpaired;
        j["base"] = behavior_to_json(s.base);
        j["variant"] = behavior_to_json(s.variant);
    }
    if (s.kind == ExperimentKind::funding) j["behavior"] = behavior_to_json(s.behavior);
    if (s.kind == ExperimentKind::accuracy) j["m_values"] = s.m_values;
    if (s.condition)
        j["condition"] = {{"reviewer", s.condition->first},
                          {"reviews_proposal", s.condition->second}};
    return j;
}

GroupConfig leg_cfg(const Scenario& s, const BehaviorSpec& spec) {
    GroupConfig c = s.cfg;
    if (spec.bonus) c.bonus_enabled = *spec.bonus;
    return c;
}

std::optional<ReviewCondition> to_condition(const Scenario& s) {
    if (!s.condition) return {};
    const int n = s.cfg.n_proposals;
    return ReviewCondition{check_merit(s.condition->first, n, "condition reviewer"),
                           check_merit(s.condition->second, n, "condition proposal")};
}

void validate_scenario(const Scenario& s) {
    try {
        validate_config(s.cfg);
    } catch (const ConfigError& e) {
        throw ValidationError(e.what());
    }
    switch (s.kind) {
        case ExperimentKind::funding:
            s.behavior.build(leg_cfg(s, s.behavior));
            break;
        case ExperimentKind::delta:
            s.base.build(leg_cfg(s, s.base));
            s.variant.build(leg_cfg(s, s.variant));
            break;
        case ExperimentKind::accuracy:
            if (s.m_values.empty())
                throw ValidationError("accuracy experiments need a nonempty m_values list");
            for (int m : s.m_values) {
                GroupConfig c = s.cfg;
                c.reviews_per_pi = m;
                try {
                    validate_config(c);
                } catch (const ConfigError& e) {
                    throw ValidationError(e.what());
                }
            }
            break;
    }
    to_condition(s);
}

std::string format(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
std::string format(const char* fmt, ...) {
    va_list args;
    va_start(args, fmt);
    char buf[512];
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    return buf;
}

void append_funding_rows(std::vector<ProbabilityRow>& rows, const FundingStats& f) {
    for (size_t i = 0; i < f.funded_probability.size(); ++i)
        rows.push_back({f.scenario, merit_of(static_cast<int>(i)), f.funded_probability[i],
                        f.std_error[i]});
}

void append_delta_rows(std::vector<ProbabilityRow>& rows, const std::string& label,
                       const DeltaResult& d) {
    for (size_t i = 0; i < d.delta.size(); ++i)
        rows.push_back({label, merit_of(static_cast<int>(i)), d.delta[i], d.std_error[i]});
}

void log_funding(std::ostream& log, const FundingStats& f, const GroupConfig& cfg) {
    const int n = cfg.n_proposals;
    const int t = cfg.funded_slots();
    double sum = 0.0;
    for (double p : f.funded_probability) sum += p;
    std::string line = format("%-34s R=%llu T=%d sum_p=%.3f", f.scenario.c_str(),
                              static_cast<unsigned long long>(f.replications), t, sum);
    const int out_merit = n - t, in_merit = n - t + 1;
    if (out_merit >= 1)
        line += format("  p(%d)=%.3f p(%d)=%.3f", out_merit,
                       f.funded_probability[static_cast<size_t>(id_of_merit(out_merit))], in_merit,
                       f.funded_probability[static_cast<size_t>(id_of_merit(in_merit))]);
    log << line << "\n";
}

void log_delta(std::ostream& log, const std::string& label, const DeltaResult& d,
               uint64_t replications) {
    // report the two largest moves
    std::vector<size_t> idx(d.delta.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::partial_sort(idx.begin(), idx.begin() + std::min<size_t>(2, idx.size()), idx.end(),
                      [&](size_t a, size_t b) { return std::abs(d.delta[a]) > std::abs(d.delta[b]); });
    std::string line = format("%-34s R=%llu", label.c_str(),
                              static_cast<unsigned long long>(replications));
    for (size_t k = 0; k < std::min<size_t>(2, idx.size()); ++k)
        line += format("  d(%d)=%+.4f", merit_of(static_cast<int>(idx[k])), d.delta[idx[k]]);
    log << line << "\n";
}

void execute_part(const Scenario& s, std::vector<ProbabilityRow>& prob_rows,
                  std::vector<AccuracyRow>& acc_rows, std::ostream& log) {
    validate_scenario(s);
    ExperimentOptions opts;
    opts.replications = s.replications;
    opts.seed = s.cfg.seed;
    opts.workers = s.workers;
    opts.label = s.name;

    switch (s.kind) {
        case ExperimentKind::funding: {
            const GroupConfig cfg = leg_cfg(s, s.behavior);
            const auto res =
                run_experiment(cfg, s.behavior.build(cfg), opts, to_condition(s));
            append_funding_rows(prob_rows, res.funding);
            log_funding(log, res.funding, cfg);
            break;
        }
        case ExperimentKind::delta: {
            const GroupConfig cfg_b = leg_cfg(s, s.base);
            const GroupConfig cfg_v = leg_cfg(s, s.variant);
            const Leg base{cfg_b, s.base.build(cfg_b), to_condition(s), s.name + "/base"};
            const Leg variant{cfg_v, s.variant.build(cfg_v), to_condition(s),
                              s.name + "/variant"};
            const DeltaResult d = delta_experiment(base, variant, opts, s.paired);
            append_funding_rows(prob_rows, d.base);
            append_funding_rows(prob_rows, d.variant);
            const std::string delta_label =
                s.name + (s.paired ? "/delta" : "/delta_unpaired");
            append_delta_rows(prob_rows, delta_label, d);
            log_funding(log, d.base, cfg_b);
            log_funding(log, d.variant, cfg_v);
            log_delta(log, delta_label, d, s.replications);
            if (s.paired && s.also_unpaired) {
                const DeltaResult du = delta_experiment(base, variant, opts, false);
                append_delta_rows(prob_rows, s.name + "/delta_unpaired", du);
                log_delta(log, s.name + "/delta_unpaired", du, s.replications);
            }
            break;
        }
        case ExperimentKind::accuracy: {
            const AccuracyResult res = ranking_accuracy(s.cfg, s.m_values, opts);
            for (const auto& p : res.points)
                acc_rows.push_back({s.name, p.m, p.top_set_accuracy, p.kendall_tau});
            std::string line = format("%-34s R=%llu", s.name.c_str(),
                                      static_cast<unsigned long long>(s.replications));
            for (const auto& p : res.points)
                line += format("  acc(m=%d)=%.3f", p.m, p.top_set_accuracy);
            log << line << "\n";
            break;
        }
    }
}

void apply_overrides(Scenario& s, const RunOverrides& o) {
    if (o.n) s.cfg.n_proposals = *o.n;
    if (o.m) s.cfg.reviews_per_pi = *o.m;
    if (o.rate) s.cfg.acceptance_rate = *o.rate;
    if (o.p) s.cfg.utility_exponent = *o.p;
    if (o.seed) s.cfg.seed = *o.seed;
    if (o.replications) s.replications = *o.replications;
    if (o.workers) s.workers = *o.workers;
    if (o.bonus) {
        s.cfg.bonus_enabled = *o.bonus;
        s.behavior.bonus.reset();
        s.base.bonus.reset();
        s.variant.bonus.reset();
    }
    if (o.paired) s.paired = *o.paired;
}

}  // namespace

BehaviorProfile BehaviorSpec::build(const GroupConfig& cfg) const {
    const int n = cfg.n_proposals;
    BehaviorProfile p = BehaviorProfile::honest(n);
    p.with_noise(noise_sigma);
    for (const auto& [pi, sigma] : noisy) p.with_noise(check_merit(pi, n, "noisy reviewer"), sigma);
    for (int pi : reverse) p.with_reverse(check_merit(pi, n, "reverse reviewer"));
    for (const auto& [reviewer, ally] : one_sided)
        p.with_one_sided_favor(check_merit(reviewer, n, "one_sided reviewer"),
                               check_merit(ally, n, "one_sided ally"));
    for (const auto& [a, b] : reciprocal)
        p.with_reciprocal_favor(check_merit(a, n, "reciprocal PI"),
                                check_merit(b, n, "reciprocal PI"));
    if (!controversial.empty()) {
        std::vector<int> ids;
        ids.reserve(controversial.size());
        for (int merit : controversial)
            ids.push_back(check_merit(merit, n, "controversial proposal"));
        p.with_controversial(std::move(ids), controversy_delta_mu, controversy_sigma,
                             controversy_plus_probability);
    }
    try {
        validate_profile(cfg, p);
    } catch (const ConfigError& e) {
        throw ValidationError(e.what());
    }
    return p;
}

Scenario scenario_from_json(const json& doc) {
    Scenario s;
    expect_keys(doc,
                {"name", "n", "m", "acceptance_rate", "utility_exponent", "bonus",
                 "mutual_review_allowed", "seed", "replications", "workers", "experiment",
                 "paired", "also_unpaired", "condition", "behavior", "base", "variant",
                 "m_values"},
                "scenario");
    s.name = get_or(doc, "name", std::string("scenario"), "scenario");
    s.cfg.n_proposals = get_or(doc, "n", s.cfg.n_proposals, "scenario");
    s.cfg.reviews_per_pi = get_or(doc, "m", s.cfg.reviews_per_pi, "scenario");
    s.cfg.acceptance_rate = get_or(doc, "acceptance_rate", s.cfg.acceptance_rate, "scenario");
    s.cfg.utility_exponent = get_or(doc, "utility_exponent", s.cfg.utility_exponent, "scenario");
    s.cfg.bonus_enabled = get_or(doc, "bonus", s.cfg.bonus_enabled, "scenario");
    s.cfg.mutual_review_allowed =
        get_or(doc, "mutual_review_allowed", s.cfg.mutual_review_allowed, "scenario");
    s.cfg.seed = get_or(doc, "seed", s.cfg.seed, "scenario");
    s.replications = get_or(doc, "replications", s.replications, "scenario");
    s.workers = get_or(doc, "workers", s.workers, "scenario");
    const std::string kind = get_or(doc, "experiment", std::string("funding"), "scenario");
    if (kind == "funding")
        s.kind = ExperimentKind::funding;
    else if (kind == "delta")
        s.kind = ExperimentKind::delta;
    else if (kind == "accuracy")
        s.kind = ExperimentKind::accuracy;
    else
        throw ParseError("unknown experiment kind '" + kind + "'");
    s.paired = get_or(doc, "paired", true, "scenario");
    s.also_unpaired = get_or(doc, "also_unpaired", false, "scenario");
    if (doc.contains("condition")) {
        const auto& c = doc.at("condition");
        expect_keys(c, {"reviewer", "reviews_proposal"}, "condition");
        s.condition = {get_or(c, "reviewer", 0, "condition"),
                       get_or(c, "reviews_proposal", 0, "condition")};
    }
    if (doc.contains("behavior")) s.behavior = behavior_from_json(doc.at("behavior"), "behavior");
    if (doc.contains("base")) s.base = behavior_from_json(doc.at("base"), "base");
    if (doc.contains("variant")) s.variant = behavior_from_json(doc.at("variant"), "variant");
    if (doc.contains("m_values")) s.m_values = get_or(doc, "m_values", std::vector<int>{}, "scenario");
    validate_scenario(s);
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scenario file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("scenario file '" + path + "': " + e.what());
    }
    return scenario_from_json(doc);
}

RunOutputs run_preset(const Preset& preset, const RunOverrides& overrides,
                      const std::string& out_dir, std::ostream& log) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());

    std::vector<ProbabilityRow> prob_rows;
    std::vector<AccuracyRow> acc_rows;
    json parts = json::array();
    for (const Scenario& part : preset.parts) {
        Scenario s = part;
        apply_overrides(s, overrides);
        execute_part(s, prob_rows, acc_rows, log);
        parts.push_back(scenario_to_json(s));
    }

    RunOutputs out;
    out.csv_path = (fs::path(out_dir) / (preset.name + ".csv")).string();
    out.meta_path = (fs::path(out_dir) / (preset.name + ".meta.json")).string();
    if (preset.accuracy_schema)
        write_accuracy_csv(out.csv_path, acc_rows);
    else
        write_probability_csv(out.csv_path, prob_rows);
    json meta;
    meta["name"] = preset.name;
    meta["description"] = preset.description;
    meta["schema"] = preset.accuracy_schema ? "accuracy" : "probability";
    meta["parts"] = parts;
    write_json(out.meta_path, meta);
    return out;
}

RunOutputs run_scenario_file(const std::string& path, const RunOverrides& overrides,
                             const std::string& out_dir, std::ostream& log) {
    Scenario s = load_scenario(path);
    Preset preset;
    preset.name = s.name;
    preset.description = "user scenario from " + path;
    preset.accuracy_schema = s.kind == ExperimentKind::accuracy;
    preset.parts.push_back(std::move(s));
    return run_preset(preset, overrides, out_dir, log);
}

}  // namespace mbcsim
