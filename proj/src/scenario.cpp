#include "cyclic/scenario.hpp"

#include "cyclic/adiabatic.hpp"
#include "cyclic/dicke.hpp"
#include "cyclic/dynamics.hpp"
#include "cyclic/errors.hpp"
#include "cyclic/polariton.hpp"
#include "cyclic/scan.hpp"
#include "cyclic/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cyclic {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& message) {
    throw InvalidArgument(where + ": " + message);
}

const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) bad(where, std::string("missing required field \"") + key + "\"");
    return j.at(key);
}

double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) bad(where, "expected a number, got " + v.dump());
    const double x = v.get<double>();
    if (!std::isfinite(x)) bad(where, "must be finite");
    return x;
}

int as_int(const json& v, const std::string& where) {
    if (!v.is_number_integer()) bad(where, "expected an integer, got " + v.dump());
    return v.get<int>();
}

std::string as_string(const json& v, const std::string& where) {
    if (!v.is_string()) bad(where, "expected a string, got " + v.dump());
    return v.get<std::string>();
}

double number_or(const json& j, const char* key, double fallback, const std::string& where) {
    return j.contains(key) ? as_number(j.at(key), where + "." + key) : fallback;
}

int int_or(const json& j, const char* key, int fallback, const std::string& where) {
    return j.contains(key) ? as_int(j.at(key), where + "." + key) : fallback;
}

cplx as_complex(const json& v, const std::string& where) {
    if (v.is_number()) return {as_number(v, where), 0.0};
    if (!v.is_array() || v.size() != 2) bad(where, "expected a number or [re, im]");
    return {as_number(v[0], where + "[0]"), as_number(v[1], where + "[1]")};
}

Mode as_mode(const json& v, const std::string& where) {
    const std::string name = as_string(v, where);
    for (Mode m : all_modes) {
        if (mode_name(m) == name) return m;
    }
    bad(where, "unknown mode \"" + name + "\" (a, b, A, C)");
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::vector<double> parse_grid(const json& v, const std::string& where, json& resolved) {
    std::vector<double> grid;
    if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) grid.push_back(as_number(v[i], where + "[" + std::to_string(i) + "]"));
        resolved = v;
    } else if (v.is_object()) {
        const double start = as_number(field(v, "start", where), where + ".start");
        const double stop = as_number(field(v, "stop", where), where + ".stop");
        const int points = as_int(field(v, "points", where), where + ".points");
        if (points < 1) bad(where + ".points", "must be >= 1");
        if (stop < start) bad(where, "stop must be >= start");
        for (int k = 0; k < points; ++k) {
            grid.push_back(points == 1 ? start : start + (stop - start) * k / (points - 1));
        }
        resolved = {{"start", start}, {"stop", stop}, {"points", points}};
    } else {
        bad(where, "expected an array of times or {start, stop, points}");
    }
    if (grid.empty()) bad(where, "time grid is empty");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) bad(where, "times must be strictly ascending");
    }
    return grid;
}

enum class ModelKind { coupling, closed_form, schedule };
enum class InitialKind { none, fock, fock4, coherent, cat };
enum class RunKind { evolve, entanglement_scan, resonance_times, adiabatic, inverse_adiabatic, bosonization,
                     oracle_compare, spectrum };

const char* model_kind_name(ModelKind k) {
    switch (k) {
        case ModelKind::coupling: return "a coupling model {g_N, omega, phi}";
        case ModelKind::closed_form: return "a closed-form limit model";
        case ModelKind::schedule: return "a schedule model";
    }
    return "";
}

RunKind parse_run_kind(const std::string& name, const std::string& where) {
    static const std::vector<std::pair<std::string, RunKind>> kinds{
        {"evolve", RunKind::evolve},
        {"entanglement_scan", RunKind::entanglement_scan},
        {"resonance_times", RunKind::resonance_times},
        {"adiabatic", RunKind::adiabatic},
        {"inverse_adiabatic", RunKind::inverse_adiabatic},
        {"bosonization", RunKind::bosonization},
        {"oracle_compare", RunKind::oracle_compare},
        {"spectrum", RunKind::spectrum}};
    for (const auto& [n, k] : kinds) {
        if (n == name) return k;
    }
    bad(where, "unknown run type \"" + name +
                   "\" (evolve, entanglement_scan, resonance_times, adiabatic, inverse_adiabatic, bosonization, "
                   "oracle_compare, spectrum)");
}

const std::vector<std::string>& observable_names() {
    static const std::vector<std::string> names{"a", "b", "A", "C", "n_a", "n_b", "n_A", "n_C"};
    return names;
}

}  // namespace

struct Scenario::Plan {
    ModelKind model_kind = ModelKind::coupling;
    CouplingConfig cfg;
    ClosedFormModel closed;
    json schedule_spec;
    std::vector<Schedule> schedules;
    std::vector<double> durations;

    InitialKind initial_kind = InitialKind::none;
    int m = 0, n = 0;
    Occupation occupation{};
    CoherentAmplitudes amplitudes;
    CatState cat;

    RunKind run_kind = RunKind::spectrum;
    std::vector<double> grid;
    std::vector<std::string> observables;
    ModeSet keep{Mode::a};
    int count = 5;
    std::optional<std::pair<int, int>> ratio;
    std::vector<int> atoms;
    int sector = 1;
    IntegratorOptions integrator;

    EvolutionSource source() const {
        if (model_kind == ModelKind::closed_form) return closed;
        return cfg;
    }
};

namespace {

using Plan = Scenario::Plan;

void parse_model(const json& j, Plan& plan, json& resolved) {
    const std::string where = "model";
    if (!j.is_object()) bad(where, "expected an object");
    if (j.contains("schedule")) {
        plan.model_kind = ModelKind::schedule;
        json spec = j.at("schedule");
        if (!spec.is_object()) bad("model.schedule", "expected an object");
        if (!spec.contains("phase_tuning") && !spec.contains("hold_tail")) spec["phase_tuning"] = "both";
        plan.schedule_spec = spec;
        const Schedule s = schedule_from_json(spec);
        plan.schedules.push_back(s);
        json r = schedule_to_json(s);
        r["phase_tuning"] = "none";
        resolved = {{"schedule", spec}, {"resolved_schedule", r}};
    } else if (j.contains("limit")) {
        plan.model_kind = ModelKind::closed_form;
        const std::string limit = as_string(j.at("limit"), "model.limit");
        const double rate = as_number(field(j, "rate", where), "model.rate");
        if (limit == "strong_positive") {
            plan.closed = ClosedFormModel::strong_positive_drive(rate);
        } else if (limit == "strong_negative") {
            plan.closed = ClosedFormModel::strong_negative_drive(rate);
        } else {
            bad("model.limit", "expected \"strong_positive\" or \"strong_negative\"");
        }
        resolved = {{"limit", limit}, {"rate", rate}, {"theta", plan.closed.theta},
                    {"eps1", plan.closed.eps1}, {"eps3", plan.closed.eps3}};
    } else if (j.contains("theta")) {
        plan.model_kind = ModelKind::closed_form;
        plan.closed = {as_number(j.at("theta"), "model.theta"), number_or(j, "eps1", 0.0, where),
                       number_or(j, "eps3", 0.0, where)};
        resolved = {{"theta", plan.closed.theta}, {"eps1", plan.closed.eps1}, {"eps3", plan.closed.eps3}};
    } else {
        plan.model_kind = ModelKind::coupling;
        plan.cfg = CouplingConfig::make(number_or(j, "g_N", 1.0, where), number_or(j, "omega", 0.0, where),
                                        number_or(j, "phi", 0.0, where));
        resolved = {{"g_N", plan.cfg.g_N}, {"omega", plan.cfg.omega}, {"phi", plan.cfg.phi}};
    }
}

void parse_initial(const json& j, Plan& plan, json& resolved) {
    const std::string where = "initial";
    if (!j.is_object()) bad(where, "expected an object");
    const std::string type = as_string(field(j, "type", where), "initial.type");
    if (type == "fock") {
        plan.initial_kind = InitialKind::fock;
        plan.m = as_int(field(j, "m", where), "initial.m");
        plan.n = as_int(field(j, "n", where), "initial.n");
        if (plan.m < 0 || plan.n < 0) bad(where, "photon numbers must be >= 0");
        resolved = {{"type", type}, {"m", plan.m}, {"n", plan.n}};
    } else if (type == "fock4") {
        plan.initial_kind = InitialKind::fock4;
        const json& occ = field(j, "occupation", where);
        if (!occ.is_array() || occ.size() != 4) bad("initial.occupation", "expected [n_a, n_b, n_A, n_C]");
        for (std::size_t i = 0; i < 4; ++i) {
            plan.occupation[i] = as_int(occ[i], "initial.occupation[" + std::to_string(i) + "]");
            if (plan.occupation[i] < 0) bad("initial.occupation", "occupations must be >= 0");
        }
        resolved = {{"type", type}, {"occupation", plan.occupation}};
    } else if (type == "coherent") {
        plan.initial_kind = InitialKind::coherent;
        const json& amps = field(j, "amplitudes", where);
        if (!amps.is_array() || amps.size() != 4) bad("initial.amplitudes", "expected four amplitudes (a, b, A, C)");
        Vec4 v;
        for (int i = 0; i < 4; ++i) v(i) = as_complex(amps[static_cast<std::size_t>(i)], "initial.amplitudes");
        plan.amplitudes = CoherentAmplitudes::from_vector(v);
        json r = json::array();
        for (int i = 0; i < 4; ++i) r.push_back(complex_json(v(i)));
        resolved = {{"type", type}, {"amplitudes", r}};
    } else if (type == "cat") {
        plan.initial_kind = InitialKind::cat;
        const Mode mode = j.contains("mode") ? as_mode(j.at("mode"), "initial.mode") : Mode::a;
        const cplx alpha = as_complex(field(j, "alpha", where), "initial.alpha");
        const std::string parity = j.contains("parity") ? as_string(j.at("parity"), "initial.parity") : "even";
        if (parity != "even" && parity != "odd") bad("initial.parity", "expected \"even\" or \"odd\"");
        plan.cat = CatState::make(mode, alpha, parity == "even" ? Parity::even : Parity::odd);
        resolved = {{"type", type}, {"mode", std::string(mode_name(mode))}, {"alpha", complex_json(alpha)},
                    {"parity", parity}};
    } else {
        bad("initial.type", "unknown initial state \"" + type + "\" (fock, fock4, coherent, cat)");
    }
}

void require_model(const Plan& plan, std::initializer_list<ModelKind> allowed, const std::string& run) {
    for (ModelKind k : allowed) {
        if (plan.model_kind == k) return;
    }
    std::string list;
    for (ModelKind k : allowed) list += (list.empty() ? "" : " or ") + std::string(model_kind_name(k));
    bad("model", "run \"" + run + "\" needs " + list);
}

void require_initial(const Plan& plan, std::initializer_list<InitialKind> allowed, const std::string& run,
                     const std::string& hint) {
    for (InitialKind k : allowed) {
        if (plan.initial_kind == k) return;
    }
    bad("initial", "run \"" + run + "\" " + hint);
}

// Cat evolution is only defined where the photons decouple from the atoms.
void require_photon_only(const Plan& plan) {
    for (double t : plan.grid) {
        const PhotonOnlyCheck check = photon_only_condition(plan.source(), t);
        if (check.residual > 1e-8) {
            throw NotPhotonOnly("cat states need photon-only times; at t = " + format_double(t) +
                                " the photon-atom leakage is " + format_double(check.residual) +
                                " (use revival/swap times or a strong-drive limit model)");
        }
    }
}

void parse_run(const json& j, Plan& plan, json& resolved) {
    const std::string where = "run";
    if (!j.is_object()) bad(where, "expected an object");
    const std::string type = as_string(field(j, "type", where), "run.type");
    plan.run_kind = parse_run_kind(type, "run.type");
    resolved = {{"type", type}};

    const auto grid = [&](std::optional<json> fallback = std::nullopt) {
        json r;
        if (j.contains("t_grid")) {
            plan.grid = parse_grid(j.at("t_grid"), "run.t_grid", r);
        } else if (fallback) {
            plan.grid = parse_grid(*fallback, "run.t_grid", r);
        } else {
            bad(where, "missing required field \"t_grid\"");
        }
        resolved["t_grid"] = r;
    };
    const auto integrator = [&] {
        plan.integrator.tolerance = number_or(j, "tolerance", plan.integrator.tolerance, where);
        plan.integrator.max_step = number_or(j, "max_step", plan.integrator.max_step, where);
        if (j.contains("verify_convergence")) {
            if (!j.at("verify_convergence").is_boolean()) bad("run.verify_convergence", "expected true or false");
            plan.integrator.verify_convergence = j.at("verify_convergence").get<bool>();
        }
        if (!(plan.integrator.tolerance > 0.0) || !(plan.integrator.max_step > 0.0)) {
            bad(where, "tolerance and max_step must be > 0");
        }
        resolved["tolerance"] = plan.integrator.tolerance;
        resolved["max_step"] = plan.integrator.max_step;
        resolved["verify_convergence"] = plan.integrator.verify_convergence;
    };

    switch (plan.run_kind) {
        case RunKind::evolve: {
            require_model(plan, {ModelKind::coupling, ModelKind::closed_form}, type);
            require_initial(plan, {InitialKind::fock, InitialKind::fock4, InitialKind::coherent, InitialKind::cat},
                            type, "needs an initial state");
            grid();
            plan.observables = observable_names();
            if (j.contains("observables")) {
                const json& obs = j.at("observables");
                if (!obs.is_array() || obs.empty()) bad("run.observables", "expected a non-empty array of names");
                plan.observables.clear();
                for (const auto& o : obs) {
                    const std::string name = as_string(o, "run.observables");
                    const auto& known = observable_names();
                    if (std::find(known.begin(), known.end(), name) == known.end()) {
                        bad("run.observables", "unknown observable \"" + name + "\" (a, b, A, C, n_a, n_b, n_A, n_C)");
                    }
                    plan.observables.push_back(name);
                }
            }
            resolved["observables"] = plan.observables;
            if (plan.initial_kind == InitialKind::cat) {
                if (plan.cat.mode != Mode::a) bad("initial.mode", "cat evolution starts from a cat on mode a");
                require_photon_only(plan);
            }
            break;
        }
        case RunKind::entanglement_scan: {
            require_model(plan, {ModelKind::coupling, ModelKind::closed_form}, type);
            require_initial(plan, {InitialKind::fock, InitialKind::fock4, InitialKind::cat}, type,
                            "needs a fock, fock4 or cat initial state (product coherent states stay unentangled)");
            grid();
            std::vector<std::string> keep{"a"};
            if (j.contains("keep")) {
                const json& k = j.at("keep");
                if (!k.is_array()) bad("run.keep", "expected an array of modes");
                keep.clear();
                for (const auto& m : k) keep.push_back(std::string(mode_name(as_mode(m, "run.keep"))));
            }
            plan.keep = ModeSet{};
            for (const auto& name : keep) plan.keep = plan.keep.with(as_mode(name, "run.keep"));
            if (plan.keep.empty() || plan.keep.size() == 4) bad("run.keep", "must name between one and three modes");
            resolved["keep"] = keep;
            if (plan.initial_kind == InitialKind::cat) {
                if (plan.cat.mode != Mode::a) bad("initial.mode", "cat evolution starts from a cat on mode a");
                require_photon_only(plan);
            }
            break;
        }
        case RunKind::resonance_times: {
            require_model(plan, {ModelKind::coupling}, type);
            plan.count = int_or(j, "count", 5, where);
            if (plan.count < 1) bad("run.count", "must be >= 1");
            if (j.contains("p") || j.contains("q")) {
                plan.ratio = {as_int(field(j, "p", where), "run.p"), as_int(field(j, "q", where), "run.q")};
                resolved["p"] = plan.ratio->first;
                resolved["q"] = plan.ratio->second;
            }
            resolved["count"] = plan.count;
            break;
        }
        case RunKind::adiabatic:
        case RunKind::inverse_adiabatic: {
            require_model(plan, {ModelKind::schedule}, type);
            if (plan.run_kind == RunKind::adiabatic) {
                require_initial(plan, {InitialKind::fock}, type, "needs a fock initial state {m, n} on the photons");
            } else {
                require_initial(plan, {InitialKind::fock4}, type,
                                "needs a fock4 initial state [0, 0, n_A, n_C] on the atoms");
                if (plan.occupation[0] != 0 || plan.occupation[1] != 0) {
                    bad("initial.occupation", "the inverse passage starts with empty photon modes");
                }
            }
            integrator();
            if (j.contains("durations")) {
                if (!plan.schedule_spec.contains("duration")) {
                    bad("run.durations", "only tanh and linear schedules have a duration to vary");
                }
                const json& d = j.at("durations");
                if (!d.is_array() || d.empty()) bad("run.durations", "expected a non-empty array");
                plan.schedules.clear();
                for (const auto& v : d) {
                    const double duration = as_number(v, "run.durations");
                    json spec = plan.schedule_spec;
                    spec["duration"] = duration;
                    plan.schedules.push_back(schedule_from_json(spec));
                    plan.durations.push_back(duration);
                }
                resolved["durations"] = plan.durations;
            } else {
                const Schedule& s = plan.schedules.front();
                plan.durations.push_back(s.sweep_end() - s.sweep_start());
            }
            break;
        }
        case RunKind::bosonization: {
            require_model(plan, {ModelKind::coupling}, type);
            if (plan.initial_kind != InitialKind::none) {
                bad("initial", "bosonization fixes its own initial state from the sector s; remove \"initial\"");
            }
            const json& n = field(j, "N", where);
            if (!n.is_array() || n.empty()) bad("run.N", "expected a non-empty array of atom numbers");
            for (const auto& v : n) plan.atoms.push_back(as_int(v, "run.N"));
            plan.sector = int_or(j, "s", 1, where);
            if (plan.sector < 0) bad("run.s", "must be >= 0");
            for (int a : plan.atoms) {
                if (4 * plan.sector > a) bad("run.N", "every N must be at least 4 s");
            }
            grid(json{{"start", 0.0}, {"stop", 2.0 * pi}, {"points", 401}});
            resolved["N"] = plan.atoms;
            resolved["s"] = plan.sector;
            break;
        }
        case RunKind::oracle_compare: {
            require_model(plan, {ModelKind::coupling}, type);
            require_initial(plan, {InitialKind::fock}, type, "needs a fock initial state {m, n}");
            grid();
            break;
        }
        case RunKind::spectrum: {
            require_model(plan, {ModelKind::coupling}, type);
            break;
        }
    }
}

// Expectation values of a two-branch state without truncation.
struct BranchMoments {
    Vec4 mean;
    Eigen::Vector4d occupation;
};

BranchMoments branch_moments(const TwoBranchState& s) {
    const std::array<cplx, 2> w{s.weight_first, s.weight_second};
    const std::array<Vec4, 2> u{s.first.vector(), s.second.vector()};
    const std::array<CoherentAmplitudes, 2> c{s.first, s.second};
    BranchMoments out{Vec4::Zero(), Eigen::Vector4d::Zero()};
    double norm2 = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int k = 0; k < 2; ++k) {
            const cplx x = std::conj(w[static_cast<std::size_t>(i)]) * w[static_cast<std::size_t>(k)] *
                           coherent_overlap(c[static_cast<std::size_t>(i)], c[static_cast<std::size_t>(k)]);
            norm2 += x.real();
            const Vec4& ui = u[static_cast<std::size_t>(i)];
            const Vec4& uk = u[static_cast<std::size_t>(k)];
            out.mean += x * uk;
            out.occupation += (x * ui.conjugate().cwiseProduct(uk)).real();
        }
    }
    out.mean /= norm2;
    out.occupation /= norm2;
    return out;
}

std::vector<json> observable_row(double t, const std::vector<std::string>& names, const Vec4& mean,
                                 const Eigen::Vector4d& occupation) {
    std::vector<json> row{t};
    for (const auto& name : names) {
        cplx v{};
        if (name.size() == 1) {
            for (Mode m : all_modes) {
                if (mode_name(m) == name) v = mean(index(m));
            }
        } else {
            for (Mode m : all_modes) {
                if (mode_name(m) == name.substr(2)) v = occupation(index(m));
            }
        }
        row.emplace_back(v.real());
        row.emplace_back(v.imag());
    }
    return row;
}

ScenarioResult run_evolve(const Plan& plan) {
    ScenarioResult r;
    r.columns.push_back("t");
    for (const auto& name : plan.observables) {
        r.columns.push_back("re_" + name);
        r.columns.push_back("im_" + name);
    }
    const EvolutionSource source = plan.source();
    for (double t : plan.grid) {
        Vec4 mean = Vec4::Zero();
        Eigen::Vector4d occ = Eigen::Vector4d::Zero();
        switch (plan.initial_kind) {
            case InitialKind::fock:
            case InitialKind::fock4: {
                const FockState s = plan.initial_kind == InitialKind::fock
                                        ? evolve_fock(source, plan.m, plan.n, t)
                                        : propagate_state(FockState::basis(plan.occupation), propagate(source, t).F);
                for (Mode m : all_modes) {
                    mean(index(m)) = s.expect_annihilation(m);
                    occ(index(m)) = s.mean_occupation(m);
                }
                break;
            }
            case InitialKind::coherent: {
                mean = evolve_coherent(plan.amplitudes, source, t).vector();
                occ = mean.cwiseAbs2();
                break;
            }
            case InitialKind::cat: {
                const BranchMoments b = branch_moments(evolve_cat(plan.cat, source, t));
                mean = b.mean;
                occ = b.occupation;
                break;
            }
            case InitialKind::none: break;
        }
        r.rows.push_back(observable_row(t, plan.observables, mean, occ));
    }
    r.summary = "evolved " + std::to_string(plan.grid.size()) + " time points";
    return r;
}

ScenarioResult run_entanglement(const Plan& plan, int jobs) {
    ScenarioResult r;
    r.columns = {"t", "entropy_bits"};
    const EvolutionSource source = plan.source();
    std::vector<double> e;
    if (plan.initial_kind == InitialKind::fock) {
        e = scan::entropies(source, plan.m, plan.n, plan.grid, plan.keep, jobs);
    } else if (plan.initial_kind == InitialKind::fock4) {
        const FockState initial = FockState::basis(plan.occupation);
        for (double t : plan.grid) {
            e.push_back(entanglement_entropy(propagate_state(initial, propagate(source, t).F), plan.keep));
        }
    } else {
        for (double t : plan.grid) e.push_back(two_branch_entropy(evolve_cat(plan.cat, source, t), plan.keep));
    }
    std::size_t best = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        r.rows.push_back({plan.grid[i], e[i]});
        if (e[i] > e[best]) best = i;
    }
    r.extras["max_entropy_bits"] = e[best];
    r.extras["t_at_max"] = plan.grid[best];
    r.summary = "max entropy " + format_double(e[best]) + " bits at t = " + format_double(plan.grid[best]);
    return r;
}

ScenarioResult run_resonance(const Plan& plan) {
    const ResonanceTimes rt = plan.ratio ? resonance_times(plan.ratio->first, plan.ratio->second, plan.cfg.g_N)
                                         : resonance_times(plan.cfg);
    ScenarioResult r;
    r.columns = {"kind", "k", "t"};
    for (int k = 0; k < plan.count; ++k) r.rows.push_back({"revival", k + 1, rt.revival.at(k)});
    if (rt.swap) {
        for (int k = 0; k < plan.count; ++k) r.rows.push_back({"swap", k, rt.swap->at(k)});
    }
    r.extras = {{"p", rt.p},
                {"q", rt.q},
                {"base_period", rt.base_period},
                {"revival", {{"first", rt.revival.first}, {"period", rt.revival.period}}},
                {"swap", rt.swap ? json{{"first", rt.swap->first}, {"period", rt.swap->period}} : json(nullptr)}};
    r.summary = "p/q = " + std::to_string(rt.p) + "/" + std::to_string(rt.q) + ", first revival " +
                format_double(rt.revival.first) +
                (rt.swap ? ", first swap " + format_double(rt.swap->first) : std::string(", no swap"));
    return r;
}

ScenarioResult run_passages(const Plan& plan) {
    ScenarioResult r;
    r.columns = {"duration", "lead", "hold", "eps1_integral", "eps3_integral",
                 "fidelity_vs_target", "fidelity_vs_exact", "exact_fidelity_vs_target"};
    json passages = json::array();
    double worst = 1.0;
    for (std::size_t i = 0; i < plan.schedules.size(); ++i) {
        const Schedule& s = plan.schedules[i];
        const PassageResult p = plan.run_kind == RunKind::adiabatic
                                    ? adiabatic_evolve(plan.m, plan.n, s, plan.integrator)
                                    : inverse_passage(plan.occupation[2], plan.occupation[3], s, plan.integrator);
        const PhaseIntegrals phases = phase_integrals(s);
        r.rows.push_back({plan.durations[i], s.lead(), s.hold(), phases.eps1, phases.eps3, p.fidelity_vs_target,
                          p.fidelity_vs_exact, p.exact_fidelity_vs_target});
        json sched = schedule_to_json(s);
        sched["phase_tuning"] = "none";
        passages.push_back({{"duration", plan.durations[i]},
                            {"schedule", sched},
                            {"dynamic_phase_integral", p.dynamic_phase_integral},
                            {"fidelity_vs_target", p.fidelity_vs_target},
                            {"fidelity_vs_exact", p.fidelity_vs_exact},
                            {"exact_fidelity_vs_target", p.exact_fidelity_vs_target},
                            {"target", fock_state_to_json(p.target)},
                            {"final_state", fock_state_to_json(p.final_state)},
                            {"exact_state", fock_state_to_json(p.exact_state)}});
        worst = std::min(worst, p.exact_fidelity_vs_target);
    }
    r.extras["passages"] = passages;
    if (passages.size() == 1) {
        for (const char* key : {"fidelity_vs_target", "fidelity_vs_exact", "exact_fidelity_vs_target"}) {
            r.extras[key] = passages[0][key];
        }
    }
    r.summary = "worst exact fidelity vs target " + format_double(worst);
    return r;
}

ScenarioResult run_bosonization(const Plan& plan, int jobs) {
    const oracle::BosonizationReport rep = oracle::bosonization_error(plan.atoms, plan.sector, plan.cfg, plan.grid, jobs);
    ScenarioResult r;
    r.columns = {"atoms", "max_trace_distance", "t_at_max"};
    for (const auto& e : rep.entries) r.rows.push_back({e.atoms, e.max_trace_distance, e.t_at_max});
    r.extras["sector"] = rep.sector;
    r.extras["initial"] = rep.initial;
    r.extras["ratios"] = rep.ratios;
    r.summary = "error ratios:";
    for (double x : rep.ratios) r.summary += " " + (std::isnan(x) ? std::string("nan (both errors vanish)") : format_double(x));
    return r;
}

ScenarioResult run_oracle_compare(const Plan& plan, int jobs) {
    const std::vector<double> d = scan::oracle_defects(plan.cfg, plan.m, plan.n, plan.grid, jobs);
    ScenarioResult r;
    r.columns = {"t", "defect"};
    std::size_t worst = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        r.rows.push_back({plan.grid[i], d[i]});
        if (d[i] > d[worst]) worst = i;
    }
    r.extras["max_defect"] = d[worst];
    r.extras["t_at_max"] = plan.grid[worst];
    r.summary = "max defect " + format_double(d[worst]) + " at t = " + format_double(plan.grid[worst]);
    return r;
}

ScenarioResult run_spectrum(const Plan& plan) {
    const PolaritonBasis basis = polariton_basis(plan.cfg);
    ScenarioResult r;
    r.columns = {"quantity", "value"};
    std::ostringstream summary;
    for (int i = 0; i < 4; ++i) {
        const std::string name = "eps" + std::to_string(i + 1);
        r.rows.push_back({name, basis.eps[static_cast<std::size_t>(i)]});
        summary << name << "=" << format_double(basis.eps[static_cast<std::size_t>(i)]) << " ";
    }
    r.rows.push_back({"theta", basis.theta});
    summary << "theta=" << format_double(basis.theta);
    r.summary = summary.str();
    return r;
}

std::string csv_cell(const json& v) {
    if (v.is_number_float()) {
        const double x = v.get<double>();
        return std::isnan(x) ? "nan" : format_double(x);
    }
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    return v.dump();
}

}  // namespace

Scenario Scenario::parse(const json& document, const std::filesystem::path& base_dir) {
    if (!document.is_object()) bad("scenario", "expected a JSON object");
    for (const auto& [key, value] : document.items()) {
        static const std::vector<std::string> known{"model", "initial", "run", "output", "jobs"};
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            bad("scenario", "unknown top-level field \"" + key + "\" (model, initial, run, output, jobs)");
        }
    }
    auto plan = std::make_shared<Plan>();
    Scenario s;
    json model_r, initial_r, run_r;
    parse_model(document.contains("model") ? document.at("model") : json::object(), *plan, model_r);
    if (document.contains("initial")) parse_initial(document.at("initial"), *plan, initial_r);
    parse_run(field(document, "run", "scenario"), *plan, run_r);
    s.resolved_ = {{"model", model_r}, {"run", run_r}};
    if (!initial_r.is_null()) s.resolved_["initial"] = initial_r;

    s.set_jobs(int_or(document, "jobs", 1, "scenario"));
    json output_r = json::object();
    if (document.contains("output")) {
        const json& out = document.at("output");
        if (!out.is_object()) bad("output", "expected an object {path, format}");
        std::optional<std::string> format;
        if (out.contains("format")) format = as_string(out.at("format"), "output.format");
        if (out.contains("path")) {
            const std::filesystem::path p = as_string(out.at("path"), "output.path");
            s.output_path_ = p.is_absolute() ? p : base_dir / p;
            output_r["path"] = p.string();
            if (!format && p.extension() == ".json") format = "json";
        }
        if (format && *format != "csv" && *format != "json") bad("output.format", "expected \"csv\" or \"json\"");
        s.format_ = format && *format == "json" ? OutputFormat::json : OutputFormat::csv;
    }
    output_r["format"] = s.format_ == OutputFormat::json ? "json" : "csv";
    s.resolved_["output"] = output_r;
    s.plan_ = std::move(plan);
    return s;
}

Scenario Scenario::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw InvalidArgument("cannot read scenario file " + file.string());
    json document;
    try {
        document = json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidArgument("scenario file " + file.string() + " is not valid JSON: " + e.what());
    }
    return parse(document, file.parent_path());
}

void Scenario::set_jobs(int jobs) {
    if (jobs < 0) throw InvalidArgument("jobs must be >= 0");
    jobs_ = jobs;
    resolved_["jobs"] = jobs;
}

ScenarioResult Scenario::execute() const {
    const Plan& plan = *plan_;
    switch (plan.run_kind) {
        case RunKind::evolve: return run_evolve(plan);
        case RunKind::entanglement_scan: return run_entanglement(plan, jobs_);
        case RunKind::resonance_times: return run_resonance(plan);
        case RunKind::adiabatic:
        case RunKind::inverse_adiabatic: return run_passages(plan);
        case RunKind::bosonization: return run_bosonization(plan, jobs_);
        case RunKind::oracle_compare: return run_oracle_compare(plan, jobs_);
        case RunKind::spectrum: return run_spectrum(plan);
    }
    return {};
}

std::string render_csv(const ScenarioResult& result) {
    std::string out;
    for (std::size_t i = 0; i < result.columns.size(); ++i) out += (i ? "," : "") + result.columns[i];
    out += '\n';
    for (const auto& row : result.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_cell(row[i]);
        out += '\n';
    }
    return out;
}

std::string Scenario::render(const ScenarioResult& result) const {
    if (format_ == OutputFormat::csv) return render_csv(result);
    json doc = {{"scenario", resolved_}, {"columns", result.columns}};
    json rows = json::array();
    for (const auto& row : result.rows) rows.push_back(row);
    doc["rows"] = rows;
    for (const auto& [key, value] : result.extras.items()) doc[key] = value;
    return dump_json(doc) + "\n";
}

int run_scenario(const Scenario& scenario, std::ostream& out, std::ostream& err) {
    try {
        const ScenarioResult result = scenario.execute();
        const std::string text = scenario.render(result);
        if (const auto path = scenario.output_path()) {
            if (path->has_parent_path()) std::filesystem::create_directories(path->parent_path());
            std::ofstream file(*path, std::ios::binary);
            file << text;
            if (!file) {
                err << "error: cannot write " << path->string() << "\n";
                return 2;
            }
        } else {
            out << text;
        }
        if (!result.summary.empty()) err << result.summary << "\n";
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.category() == ErrorCategory::numerical ? 3 : 2;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int run_scenario_file(const std::filesystem::path& file, std::ostream& out, std::ostream& err,
                      std::optional<int> jobs) {
    try {
        Scenario s = Scenario::load(file);
        if (jobs) s.set_jobs(*jobs);
        return run_scenario(s, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.category() == ErrorCategory::numerical ? 3 : 2;
    }
}

}  // namespace cyclic
