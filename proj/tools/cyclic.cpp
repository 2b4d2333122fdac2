// Command-line front end. Every subcommand assembles a scenario (from --config
// plus flag overrides) and hands it to the scenario runner.

#include "cyclic/errors.hpp"
#include "cyclic/scenario.hpp"
#include "cyclic/types.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace fs = std::filesystem;
using cyclic::json;

namespace {

struct Flags {
    std::string config;
    double gn = 1.0, omega = 0.0, phi = 0.0;
    std::string limit;
    double rate = 0.0;
    int m = 0, n = 0;
    double tmax = 0.0;
    int steps = 0;
    std::string out, format;
    int jobs = 1;

    // Options that only some subcommands expose.
    int p = 0, q = 1, count = 5;
    std::string alpha, beta, zeta, eta;
    std::string parity = "even";
    std::vector<std::string> keep;
    bool entropy = false;
    double omega_from = 0.0, omega_to = 0.0, duration = 200.0, steepness = 1.5;
    std::string family = "tanh", tuning = "both";
    std::vector<double> durations;
    double tolerance = 1e-11, max_step = 0.25;
    bool no_verify = false;
    int n_A = 0, n_C = 0;
    std::vector<int> atoms;
    int s = 1;
    std::string scenario;
};

struct Command {
    CLI::App* app = nullptr;
    std::map<std::string, CLI::Option*> options;

    bool given(const std::string& name) const {
        const auto it = options.find(name);
        return it != options.end() && it->second->count() > 0;
    }
};

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw cyclic::InvalidArgument("cannot read config file " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw cyclic::InvalidArgument("config file " + path + " is not valid JSON: " + e.what());
    }
}

json parse_complex(const std::string& text) {
    std::stringstream ss(text);
    std::string re, im;
    std::getline(ss, re, ',');
    std::getline(ss, im);
    try {
        return json::array({std::stod(re), im.empty() ? 0.0 : std::stod(im)});
    } catch (const std::exception&) {
        throw cyclic::InvalidArgument("expected a complex number as re[,im], got \"" + text + "\"");
    }
}

void add_model_flags(Command& c, Flags& f) {
    c.options["gn"] = c.app->add_option("--gn", f.gn, "collective coupling g_N");
    c.options["omega"] = c.app->add_option("--omega", f.omega, "drive Rabi frequency Omega");
    c.options["phi"] = c.app->add_option("--phi", f.phi, "combined drive phase");
}

void add_limit_flags(Command& c, Flags& f) {
    c.options["limit"] = c.app->add_option("--limit", f.limit, "closed-form limit instead of a coupling model")
                             ->check(CLI::IsMember({"strong_positive", "strong_negative"}));
    c.options["rate"] = c.app->add_option("--rate", f.rate, "phase rate of the limit model (eps3 or eps1)");
}

void add_fock_flags(Command& c, Flags& f) {
    c.options["m"] = c.app->add_option("--m", f.m, "photons in mode a");
    c.options["n"] = c.app->add_option("--n", f.n, "photons in mode b");
}

void add_grid_flags(Command& c, Flags& f) {
    c.options["tmax"] = c.app->add_option("--tmax", f.tmax, "last time of the grid (grid starts at 0)");
    c.options["steps"] = c.app->add_option("--steps", f.steps, "number of grid intervals")->check(CLI::PositiveNumber);
}

void add_output_flags(Command& c, Flags& f) {
    c.options["config"] = c.app->add_option("--config", f.config, "scenario JSON providing defaults")
                              ->check(CLI::ExistingFile);
    c.options["out"] = c.app->add_option("--out", f.out, "artifact path (stdout if omitted)");
    c.options["format"] = c.app->add_option("--format", f.format, "csv or json (default from --out extension)")
                              ->check(CLI::IsMember({"csv", "json"}));
    c.options["jobs"] = c.app->add_option("--jobs", f.jobs, "worker threads for grid scans (0 = all)")
                            ->check(CLI::NonNegativeNumber);
}

json& object_at(json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_object()) j[key] = json::object();
    return j[key];
}

void apply_model(const Command& c, const Flags& f, json& doc) {
    json& model = object_at(doc, "model");
    if (c.given("limit")) {
        model = {{"limit", f.limit}, {"rate", c.given("rate") ? f.rate : -1.0}};
        return;
    }
    if (c.given("gn")) model["g_N"] = f.gn;
    if (c.given("omega")) model["omega"] = f.omega;
    if (c.given("phi")) model["phi"] = f.phi;
}

void apply_fock(const Command& c, const Flags& f, json& doc) {
    json& initial = object_at(doc, "initial");
    if (initial.value("type", std::string()) != "fock") initial = {{"type", "fock"}, {"m", 1}, {"n", 0}};
    if (c.given("m")) initial["m"] = f.m;
    if (c.given("n")) initial["n"] = f.n;
}

void apply_grid(const Command& c, const Flags& f, json& run, double default_tmax, int default_steps) {
    json current = run.contains("t_grid") ? run["t_grid"] : json();
    if (!c.given("tmax") && !c.given("steps") && !current.is_null()) return;
    double tmax = default_tmax;
    int steps = default_steps;
    if (current.is_object()) {
        tmax = current.value("stop", tmax);
        steps = current.value("points", steps + 1) - 1;
    }
    if (c.given("tmax")) tmax = f.tmax;
    if (c.given("steps")) steps = f.steps;
    run["t_grid"] = {{"start", 0.0}, {"stop", tmax}, {"points", steps + 1}};
}

int execute(const Command& c, const Flags& f, json doc) {
    fs::path base = fs::current_path();
    if (c.given("config")) base = fs::absolute(f.config).parent_path();
    if (c.given("out")) {
        json& output = object_at(doc, "output");
        output["path"] = fs::absolute(f.out).string();
    }
    if (c.given("format")) object_at(doc, "output")["format"] = f.format;
    if (c.given("jobs")) doc["jobs"] = f.jobs;
    const cyclic::Scenario scenario = cyclic::Scenario::parse(doc, base);
    return cyclic::run_scenario(scenario, std::cout, std::cerr);
}

json base_document(const Command& c, const Flags& f, const std::string& run_type) {
    json doc = c.given("config") ? load_config(f.config) : json::object();
    json& run = object_at(doc, "run");
    if (run.value("type", run_type) != run_type) run = json::object();
    run["type"] = run_type;
    return doc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cyclic three-level ensemble in two cavity modes: polaritons, dynamics, storage"};
    app.require_subcommand(1);
    Flags f;
    std::vector<Command> commands;
    std::function<int()> action;

    const auto command = [&](const std::string& name, const std::string& help) -> Command& {
        commands.push_back({app.add_subcommand(name, help), {}});
        return commands.back();
    };
    commands.reserve(16);

    {
        Command& c = command("spectrum", "polariton energies and mixing angle");
        add_model_flags(c, f);
        add_output_flags(c, f);
        c.app->callback([&, &c = c] {
            action = [&] { return execute(c, f, [&] {
                json doc = base_document(c, f, "spectrum");
                apply_model(c, f, doc);
                return doc;
            }()); };
        });
    }
    {
        Command& c = command("evolve-fock", "mode expectations for |m, n>_ab evolving in time");
        add_model_flags(c, f);
        add_limit_flags(c, f);
        add_fock_flags(c, f);
        add_grid_flags(c, f);
        add_output_flags(c, f);
        c.app->callback([&, &c = c] {
            action = [&] {
                json doc = base_document(c, f, "evolve");
                apply_model(c, f, doc);
                apply_fock(c, f, doc);
                apply_grid(c, f, doc["run"], 10.0, 100);
                return execute(c, f, doc);
            };
        });
    }
    {
        Command& c = command("entanglement-scan", "entropy of the kept modes along a time grid");
        add_model_flags(c, f);
        add_limit_flags(c, f);
        add_fock_flags(c, f);
        add_grid_flags(c, f);
        add_output_flags(c, f);
        c.options["keep"] = c.app->add_option("--keep", f.keep, "modes on the kept side (default a)")->delimiter(',');
        c.app->callback([&, &c = c] {
            action = [&] {
                json doc = base_document(c, f, "entanglement_scan");
                apply_model(c, f, doc);
                if (!(doc.contains("initial") && doc["initial"].value("type", std::string()) != "fock") ||
                    c.given("m") || c.given("n")) {
                    apply_fock(c, f, doc);
                }
                apply_grid(c, f, doc["run"], 2.0 * cyclic::pi, 2000);
                if (c.given("keep")) doc["run"]["keep"] = f.keep;
                return execute(c, f, doc);
            };
        });
    }
    {
        Command& c = command("revival-times", "revival and swap times for a rational drive ratio");
        add_model_flags(c, f);
        add_output_flags(c, f);
        c.options["p"] = c.app->add_option("--p", f.p, "numerator of Omega / sqrt(Omega^2 + 4 g_N^2)");
        c.options["q"] = c.app->add_option("--q", f.q, "denominator");
        c.options["count"] = c.app->add_option("--count", f.count, "times listed per kind")->check(CLI::PositiveNumber);
        c.app->callback([&, &c = c] {
            action = [&] {
                json doc = base_document(c, f, "resonance_times");
                apply_model(c, f, doc);
                if (c.given("p") != c.given("q")) throw cyclic::InvalidArgument("--p and --q go together");
                if (c.given("p")) {
                    doc["run"]["p"] = f.p;
                    doc["run"]["q"] = f.q;
                }
                if (c.given("count")) doc["run"]["count"] = f.count;
                return execute(c, f, doc);
            };
        });
    }
    {
        Command& c = command("evolve-coherent", "coherent amplitudes along a time grid");
        add_model_flags(c, f);
        add_limit_flags(c, f);
        add_grid_flags(c, f);
        add_output_flags(c, f);
        c.options["alpha"] = c.app->add_option("--alpha", f.alpha, "amplitude on a as re[,im]");
        c.options["beta"] = c.app->add_option("--beta", f.beta, "amplitude on b");
        c.options["zeta"] = c.app->add_option("--zeta", f.zeta, "amplitude on A");
        c.options["eta"] = c.app->add_option("--eta", f.eta, "amplitude on C");
        c.app->callback([&, &c = c] {
            action = [&] {
                json doc = base_document(c, f, "evolve");
                apply_model(c, f, doc);
                json& initial = object_at(doc, "initial");
                if (initial.value("type", std::string()) != "coherent") {
                    initial = {{"type", "coherent"}, {"amplitudes", json::array({0.0, 0.0, 0.0, 0.0})}};
                }
                const std::array<std::pair<const char*, const std::string*>, 4> amps{
                    {{"alpha", &f.alpha}, {"beta", &f.beta}, {"zeta", &f.zeta}, {"eta", &f.eta}}};
                for (std::size_t i = 0; i < 4; ++i) {
                    if (c.given(amps[i].first)) initial["amplitudes"][i] = parse_complex(*amps[i].second);
                }
                apply_grid(c, f, doc["run"], 10.0, 100);
                return execute(c, f, doc);
            };
        });
    }
    {
        Command& c = command("evolve-cat", "cat state on mode a at photon-only times");
        add_model_flags(c, f);
        add_limit_flags(c, f);
        add_grid_flags(c, f);
        add_output_flags(c, f);
        c.options["alpha"] = c.app->add_option("--alpha", f.alpha, "cat amplitude as re[,im]");
        c.options["parity"] = c.app->add_option("--parity", f.parity, "even or odd")
                                  ->check(CLI::IsMember({"even", "odd"}));
        c.options["entropy"] = c.app->add_flag("--entropy", f.entropy, "report the entropy of the kept modes instead");
        c.options["keep"] = c.app->add_option("--keep", f.keep, "kept modes for --entropy")->delimiter(',');
        c.app->callback([&, &c = c] {
            action = [&] {
                json doc = base_document(c, f, f.entropy ? "entanglement_scan" : "evolve");
                apply_model(c, f, doc);
                json& initial = object_at(doc, "initial");
                if (initial.value("type", std::string()) != "cat") {
                    initial = {{"type", "cat"}, {"mode", "a"}, {"alpha", json::array({1.0, 0.0})}, {"parity", "even"}};
                }
                if (c.given("alpha")) initial["alpha"] = parse_complex(f.alpha);
                if (c.given("parity")) initial["parity"] = f.parity;
                if (c.given("keep")) doc["run"]["keep"] = f.keep;
                apply_grid(c, f, doc["run"], cyclic::pi / 2, 8);
                return execute(c, f, doc);
            };
        });
    }

    const auto add_schedule_flags = [&](Command& c, double from, double to) {
        f.omega_from = from;
        f.omega_to = to;
        c.options["gn"] = c.app->add_option("--gn", f.gn, "collective coupling g_N");
        c.options["omega_from"] = c.app->add_option("--omega-from", f.omega_from, "Omega at the start of the sweep");
        c.options["omega_to"] = c.app->add_option("--omega-to", f.omega_to, "Omega at the end of the sweep");
        c.options["duration"] = c.app->add_option("--duration", f.duration, "sweep duration");
        c.options["family"] = c.app->add_option("--family", f.family, "tanh or linear")
                                  ->check(CLI::IsMember({"tanh", "linear"}));
        c.options["steepness"] = c.app->add_option("--steepness", f.steepness, "tanh steepness");
        c.options["tuning"] = c.app->add_option("--tuning", f.tuning, "phase tuning: none, eps3 or both")
                                  ->check(CLI::IsMember({"none", "eps3", "both"}));
        c.options["durations"] = c.app->add_option("--durations", f.durations, "sweep durations to compare")
                                     ->delimiter(',');
        c.options["tolerance"] = c.app->add_option("--tolerance", f.tolerance, "integrator error per unit time");
        c.options["max_step"] = c.app->add_option("--max-step", f.max_step, "integrator step cap");
        c.options["no_verify"] = c.app->add_flag("--no-verify", f.no_verify, "skip the step-halving convergence rerun");
        add_output_flags(c, f);
    };
    const auto apply_schedule = [&](const Command& c, json& doc, double from, double to) {
        json& model = object_at(doc, "model");
        json& s = object_at(model, "schedule");
        if (!s.contains("family")) {
            s = {{"g_N", 1.0}, {"family", "tanh"}, {"omega_from", from}, {"omega_to", to}, {"duration", 200.0},
                 {"steepness", 1.5}, {"phase_tuning", "both"}};
        }
        if (c.given("gn")) s["g_N"] = f.gn;
        if (c.given("omega_from")) s["omega_from"] = f.omega_from;
        if (c.given("omega_to")) s["omega_to"] = f.omega_to;
        if (c.given("duration")) s["duration"] = f.duration;
        if (c.given("family")) s["family"] = f.family;
        if (c.given("steepness")) s["steepness"] = f.steepness;
        if (c.given("tuning")) {
            s["phase_tuning"] = f.tuning;
            s.erase("hold_tail");
        }
        json& run = doc["run"];
        if (c.given("durations")) run["durations"] = f.durations;
        if (c.given("tolerance")) run["tolerance"] = f.tolerance;
        if (c.given("max_step")) run["max_step"] = f.max_step;
        if (c.given("no_verify")) run["verify_convergence"] = false;
    };
    {
        Command& c = command("adiabatic-transfer", "store |m, n>_ab in the atoms with an Omega: + -> - sweep");
        add_schedule_flags(c, 20.0, -20.0);
        add_fock_flags(c, f);
        c.app->callback([&, &c = c] {
            action = [&] {
                json doc = base_document(c, f, "adiabatic");
                apply_schedule(c, doc, 20.0, -20.0);
                apply_fock(c, f, doc);
                return execute(c, f, doc);
            };
        });
    }
    {
        Command& c = command("inverse-transfer", "retrieve |n_A, n_C> into the photons with an Omega: - -> + sweep");
        add_schedule_flags(c, -20.0, 20.0);
        c.options["nA"] = c.app->add_option("--nA", f.n_A, "excitations in A");
        c.options["nC"] = c.app->add_option("--nC", f.n_C, "excitations in C");
        c.app->callback([&, &c = c] {
            action = [&] {
                json doc = base_document(c, f, "inverse_adiabatic");
                apply_schedule(c, doc, -20.0, 20.0);
                json& initial = object_at(doc, "initial");
                if (initial.value("type", std::string()) != "fock4") {
                    initial = {{"type", "fock4"}, {"occupation", json::array({0, 0, 0, 1})}};
                }
                if (c.given("nA")) initial["occupation"][2] = f.n_A;
                if (c.given("nC")) initial["occupation"][3] = f.n_C;
                return execute(c, f, doc);
            };
        });
    }
    {
        Command& c = command("validate-bosonization", "finite-N Dicke dynamics against the bosonized model");
        add_model_flags(c, f);
        add_grid_flags(c, f);
        add_output_flags(c, f);
        c.options["N"] = c.app->add_option("--N", f.atoms, "atom numbers, e.g. 20,40")->delimiter(',');
        c.options["s"] = c.app->add_option("--s", f.s, "excitation sector");
        c.app->callback([&, &c = c] {
            action = [&] {
                json doc = base_document(c, f, "bosonization");
                apply_model(c, f, doc);
                json& run = doc["run"];
                if (c.given("N")) run["N"] = f.atoms;
                if (!run.contains("N")) run["N"] = json::array({20, 40});
                if (c.given("s")) run["s"] = f.s;
                apply_grid(c, f, run, 2.0 * cyclic::pi, 400);
                return execute(c, f, doc);
            };
        });
    }
    {
        Command& c = command("oracle-compare", "closed-form evolution against sector-exact propagation");
        add_model_flags(c, f);
        add_fock_flags(c, f);
        add_grid_flags(c, f);
        add_output_flags(c, f);
        c.app->callback([&, &c = c] {
            action = [&] {
                json doc = base_document(c, f, "oracle_compare");
                apply_model(c, f, doc);
                apply_fock(c, f, doc);
                apply_grid(c, f, doc["run"], 10.0, 50);
                return execute(c, f, doc);
            };
        });
    }
    {
        Command& c = command("run", "execute a scenario file");
        c.app->add_option("scenario", f.scenario, "scenario JSON")->required()->check(CLI::ExistingFile);
        c.options["jobs"] = c.app->add_option("--jobs", f.jobs, "worker threads for grid scans (0 = all)")
                                ->check(CLI::NonNegativeNumber);
        c.app->callback([&, &c = c] {
            action = [&] {
                return cyclic::run_scenario_file(f.scenario, std::cout, std::cerr,
                                                 c.given("jobs") ? std::optional<int>(f.jobs) : std::nullopt);
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        return action();
    } catch (const cyclic::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.category() == cyclic::ErrorCategory::numerical ? 3 : 2;
    }
}
