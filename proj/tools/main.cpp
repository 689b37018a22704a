#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mbcsim/scenario.hpp"

namespace {

struct Flags {
    std::vector<std::string> presets;
    std::string scenario_file;
    std::string out_dir = ".";
    std::optional<uint64_t> replications, seed;
    std::optional<int> n, m, workers;
    std::optional<double> rate, p;
    std::string bonus, paired;  // "on" / "off"
};

std::optional<bool> parse_switch(const std::string& v, const char* flag) {
    if (v.empty()) return {};
    if (v == "on") return true;
    if (v == "off") return false;
    throw mbcsim::ValidationError(std::string(flag) + " expects 'on' or 'off'");
}

mbcsim::RunOverrides to_overrides(const Flags& f) {
    mbcsim::RunOverrides o;
    o.replications = f.replications;
    o.seed = f.seed;
    o.n = f.n;
    o.m = f.m;
    o.workers = f.workers;
    o.rate = f.rate;
    o.p = f.p;
    o.bonus = parse_switch(f.bonus, "--bonus");
    o.paired = parse_switch(f.paired, "--paired");
    return o;
}

int run_command(const Flags& flags) {
    const auto overrides = to_overrides(flags);
    if (!flags.scenario_file.empty()) {
        const auto out =
            mbcsim::run_scenario_file(flags.scenario_file, overrides, flags.out_dir, std::cout);
        std::cout << "wrote " << out.csv_path << "\n";
        return 0;
    }
    if (flags.presets.empty())
        throw mbcsim::ValidationError("nothing to run: name presets or pass --scenario");
    std::vector<const mbcsim::Preset*> todo;
    for (const auto& name : flags.presets) {
        if (name == "all") {
            for (const auto& p : mbcsim::presets()) todo.push_back(&p);
            continue;
        }
        const auto* p = mbcsim::find_preset(name);
        if (!p) throw mbcsim::ValidationError("unknown preset '" + name + "' (see `mbcsim list`)");
        todo.push_back(p);
    }
    for (const auto* p : todo) {
        const auto out = mbcsim::run_preset(*p, overrides, flags.out_dir, std::cout);
        std::cout << "wrote " << out.csv_path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mbcsim - distributed proposal-review mechanism simulator"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "List available presets");

    Flags flags;
    auto* run = app.add_subcommand("run", "Run presets or a scenario file");
    run->add_option("presets", flags.presets, "Preset names (or 'all')");
    run->add_option("--scenario", flags.scenario_file, "Scenario JSON file");
    run->add_option("--out", flags.out_dir, "Output directory (default: .)");
    run->add_option("--replications", flags.replications, "Replication count override");
    run->add_option("--seed", flags.seed, "Master seed override");
    run->add_option("--n", flags.n, "Group size override");
    run->add_option("--m", flags.m, "Reviews-per-PI override");
    run->add_option("--rate", flags.rate, "Acceptance rate override");
    run->add_option("--p", flags.p, "Utility exponent override");
    run->add_option("--bonus", flags.bonus, "Force quality bonuses on|off");
    run->add_option("--paired", flags.paired, "Common-random-number pairing on|off");
    run->add_option("--workers", flags.workers,
                    "Worker threads (default: MBCSIM_WORKERS or hardware)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            for (const auto& p : mbcsim::presets())
                std::cout << p.name << "\t" << p.description << "\n";
            return 0;
        }
        return run_command(flags);
    } catch (const mbcsim::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const mbcsim::ConfigError& e) {  // includes ValidationError
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
