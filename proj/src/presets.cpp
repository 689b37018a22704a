#include "mbcsim/scenario.hpp"

namespace mbcsim {

namespace {

const std::vector<int> kMSweep = {1, 3, 5, 7, 9, 12, 16, 20, 24};

Scenario desk(const std::string& name) {
    Scenario s;
    s.name = name;
    s.cfg = GroupConfig{};  // N=25, m=7, 15%, p=1, bonus on
    return s;
}

Scenario funding(const std::string& name, bool bonus, BehaviorSpec behavior = {}) {
    Scenario s = desk(name);
    s.cfg.bonus_enabled = bonus;
    s.kind = ExperimentKind::funding;
    s.behavior = std::move(behavior);
    return s;
}

Scenario delta(const std::string& name, bool bonus, BehaviorSpec base, BehaviorSpec variant) {
    Scenario s = desk(name);
    s.cfg.bonus_enabled = bonus;
    s.kind = ExperimentKind::delta;
    s.base = std::move(base);
    s.variant = std::move(variant);
    return s;
}

Scenario accuracy(const std::string& name, bool bonus) {
    Scenario s = desk(name);
    s.cfg.bonus_enabled = bonus;
    s.kind = ExperimentKind::accuracy;
    s.m_values = kMSweep;
    return s;
}

BehaviorSpec reverse_pi(int merit) {
    BehaviorSpec b;
    b.reverse = {merit};
    return b;
}

BehaviorSpec noisy_pi(int merit, double sigma) {
    BehaviorSpec b;
    b.noisy = {{merit, sigma}};
    return b;
}

BehaviorSpec all_noisy(double sigma) {
    BehaviorSpec b;
    b.noise_sigma = sigma;
    return b;
}

BehaviorSpec one_sided(int reviewer, int ally) {
    BehaviorSpec b;
    b.one_sided = {{reviewer, ally}};
    return b;
}

BehaviorSpec reciprocal(int a, int c) {
    BehaviorSpec b;
    b.reciprocal = {{a, c}};
    return b;
}

BehaviorSpec controversial(double sigma, std::vector<int> proposals, double delta_mu) {
    BehaviorSpec b;
    b.noise_sigma = sigma;
    b.controversial = std::move(proposals);
    b.controversy_delta_mu = delta_mu;
    b.controversy_sigma = sigma;
    return b;
}

std::vector<Preset> build_presets() {
    std::vector<Preset> out;

    {
        Preset p{"fig1", "top-T selection accuracy of the initial MBC list vs reviews per PI", {},
                 true};
        p.parts.push_back(accuracy("fig1", false));
        out.push_back(std::move(p));
    }
    {
        Preset p{"fig2",
                 "funding probability vs merit: honest group vs PI21 reverse-ranking, with and "
                 "without quality bonuses",
                 {},
                 false};
        p.parts.push_back(funding("fig2/honest_nobonus", false));
        p.parts.push_back(funding("fig2/pi21_reverse_nobonus", false, reverse_pi(21)));
        p.parts.push_back(funding("fig2/honest_bonus", true));
        p.parts.push_back(funding("fig2/pi21_reverse_bonus", true, reverse_pi(21)));
        out.push_back(std::move(p));
    }
    {
        Preset p{"fig3", "funding shift when PI23 reviews with Gaussian noise of growing sigma",
                 {}, false};
        for (double sigma : {1.0, 2.0, 3.0}) {
            Scenario s = delta("fig3/pi23_sigma" + std::to_string(static_cast<int>(sigma)), true,
                               {}, noisy_pi(23, sigma));
            p.parts.push_back(std::move(s));
        }
        out.push_back(std::move(p));
    }
    {
        Preset p{"fig4",
                 "funding shift caused by enabling quality bonuses for an all-honest group",
                 {},
                 false};
        BehaviorSpec off, on;
        off.bonus = false;
        on.bonus = true;
        p.parts.push_back(delta("fig4/bonus_effect", true, off, on));
        BehaviorSpec off_noisy = all_noisy(1.0), on_noisy = all_noisy(1.0);
        off_noisy.bonus = false;
        on_noisy.bonus = true;
        p.parts.push_back(delta("fig4/bonus_effect_noisy", true, off_noisy, on_noisy));
        out.push_back(std::move(p));
    }
    {
        Preset p{"fig5", "absolute funding probabilities with and without quality bonuses", {},
                 false};
        p.parts.push_back(funding("fig5/honest_nobonus", false));
        p.parts.push_back(funding("fig5/honest_bonus", true));
        out.push_back(std::move(p));
    }
    {
        Preset p{"fig6",
                 "one-sided favor, low favors high (PI5 boosts PI20), conditioned on the "
                 "colluder reviewing the ally",
                 {},
                 false};
        Scenario s = delta("fig6/onesided_5_favors_20", true, {}, one_sided(5, 20));
        s.condition = {{5, 20}};
        s.also_unpaired = true;
        p.parts.push_back(std::move(s));
        out.push_back(std::move(p));
    }
    {
        Preset p{"fig7",
                 "one-sided favor, high favors high (PI18 boosts PI20), conditioned on the "
                 "colluder reviewing the ally",
                 {},
                 false};
        Scenario s = delta("fig7/onesided_18_favors_20", true, {}, one_sided(18, 20));
        s.condition = {{18, 20}};
        s.also_unpaired = true;
        p.parts.push_back(std::move(s));
        out.push_back(std::move(p));
    }
    {
        Preset p{"fig8", "reciprocal favors between PI5 and PI20 (a priori, unconditioned)", {},
                 false};
        Scenario s = delta("fig8/reciprocal_5_20", true, {}, reciprocal(5, 20));
        s.also_unpaired = true;
        p.parts.push_back(std::move(s));
        out.push_back(std::move(p));
    }
    {
        Preset p{"fig9", "reciprocal favors between PI18 and PI20 (a priori, unconditioned)", {},
                 false};
        Scenario s = delta("fig9/reciprocal_18_20", true, {}, reciprocal(18, 20));
        s.also_unpaired = true;
        p.parts.push_back(std::move(s));
        out.push_back(std::move(p));
    }
    {
        Preset p{"fig10",
                 "bimodal perception of a controversial merit-23 proposal (sigma=2.5, dmu=5) vs "
                 "its non-controversial self",
                 {},
                 false};
        p.parts.push_back(delta("fig10/controversial_23", true, all_noisy(2.5),
                                controversial(2.5, {23}, 5.0)));
        out.push_back(std::move(p));
    }
    {
        Preset p{"fig11",
                 "controversy helps a weak proposal (merit 17) and hurts a strong one (merit 23)",
                 {},
                 false};
        p.parts.push_back(delta("fig11/controversial_17", true, all_noisy(2.5),
                                controversial(2.5, {17}, 5.0)));
        p.parts.push_back(delta("fig11/controversial_23", true, all_noisy(2.5),
                                controversial(2.5, {23}, 5.0)));
        out.push_back(std::move(p));
    }
    {
        Preset p{"fig12", "top-T selection accuracy of the full mechanism (bonuses on) vs "
                          "reviews per PI",
                 {}, true};
        p.parts.push_back(accuracy("fig12", true));
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> all = build_presets();
    return all;
}

const Preset* find_preset(const std::string& name) {
    for (const auto& p : presets())
        if (p.name == name) return &p;
    return nullptr;
}

}  // namespace mbcsim
