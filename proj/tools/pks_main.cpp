// pks: command line front end.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/os.h>
#include <json.hpp>

#include "pks/acceptance.hpp"
#include "pks/config.hpp"
#include "pks/diagnostics.hpp"
#include "pks/errors.hpp"
#include "pks/parallel.hpp"
#include "pks/profile.hpp"
#include "pks/recovery.hpp"
#include "pks/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pks;

namespace {

struct LawArgs {
    double m = 0, q = 0, cbar = 0;
};

void add_law_options(CLI::App* sc, LawArgs& l) {
    sc->add_option("--m", l.m, "pressure exponent")->required();
    sc->add_option("--q", l.q, "destruction exponent")->required();
    sc->add_option("--cbar", l.cbar, "minimum destruction rate")->required();
}

std::string out_path(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    return (fs::path(dir) / name).string();
}

void write_json(const std::string& path, const json& j) {
    std::ofstream(path) << j.dump(2) << "\n";
}

// 17 significant digits everywhere so files round-trip
std::string num(double v) { return fmt::format("{:.17g}", v); }

json constants_record(const LawPair& lp) {
    return {{"m", lp.f.m()},          {"q", lp.g.q()},       {"q_prime", lp.g.q_prime()},
            {"m_prime", lp.f.m_prime()}, {"c_bar", lp.k.c_bar}, {"a", lp.k.a},
            {"rho_plus", lp.k.rho_plus}, {"phi_plus", lp.k.phi_plus}};
}

struct Setup {
    LawPair laws;
    Potentials pot;
    Medium md;
};

Setup setup_from(const RunConfig& cfg) {
    if (!cfg.laws) throw ValidationError("laws: section required");
    if (!cfg.grid) throw ValidationError("grid: section required");
    LawPair lp(cfg.laws->m, cfg.laws->q, cfg.laws->cbar);
    MediumSpec ms = cfg.medium;
    ms.c_bar = cfg.laws->cbar;
    return {lp, Potentials(lp), build_medium(cfg.grid->build(), ms)};
}

void write_snapshot(const std::string& path, const Grid& g, const Field& rho, const Field& phi) {
    auto out = fmt::output_file(path);
    out.print("i,j,x,y,rho,phi\n");
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            size_t k = g.idx(i, j);
            out.print("{},{},{},{},{},{}\n", i, j, num(g.xc(i)), num(g.yc(j)), num(rho[k]), num(phi[k]));
        }
}

int cmd_constants(const LawArgs& l, const std::string& out) {
    LawPair lp(l.m, l.q, l.cbar);
    json j = constants_record(lp);
    std::cout << j.dump(2) << "\n";
    if (!out.empty()) write_json(out_path(out, "constants.json"), j);
    return 0;
}

int cmd_potentials(const LawArgs& l, const std::string& csv, int samples, const std::string& out) {
    Potentials pot(LawPair(l.m, l.q, l.cbar));
    const auto& k = pot.k();
    if (!csv.empty()) {
        auto f = fmt::output_file(csv);
        f.print("s,u,W,v,Wstar,F\n");
        for (int i = 0; i <= samples; ++i) {
            double s = 1.5 * i / samples;
            double u = s * k.rho_plus, v = s * k.phi_plus;
            f.print("{},{},{},{},{},{}\n", num(s), num(u), num(pot.W(u)), num(v), num(pot.Wstar(v)), num(pot.F(v)));
        }
    }
    json j = {{"gamma", pot.tension().gamma}, {"gamma0", pot.tension().gamma0}};
    std::cout << j.dump(2) << "\n";
    if (!out.empty()) write_json(out_path(out, "tension.json"), j);
    return 0;
}

int cmd_profile(const LawArgs& l, double normA, bool q0_check, const std::string& out) {
    Potentials pot(LawPair(l.m, l.q, l.cbar));
    ProfileOptions opt;
    opt.norm_p_A = normA;
    if (l.q > 2) {
        // algebraic tails need a long range
        opt.z_max = 400 * normA;
        opt.max_step = 0.5 * normA;
    }
    auto sol = solve_profile(pot, opt);
    std::string dir = out.empty() ? "." : out;
    {
        auto f = fmt::output_file(out_path(dir, "profile.csv"));
        f.print("z,omega,domega\n");
        for (size_t i = 0; i < sol.z.size(); ++i) f.print("{},{},{}\n", num(sol.z[i]), num(sol.omega[i]), num(sol.domega[i]));
    }
    json j = {{"norm_p_A", normA},
              {"nodes", sol.z.size()},
              {"max_residual", sol.max_residual},
              {"tail_rate_zero", sol.tail_rate_zero},
              {"tail_slope_zero", sol.tail_slope_zero},
              {"tail_rate_plus", sol.tail_rate_plus},
              {"layer_energy", profile_energy(sol, pot)},
              {"gamma_phi_plus", pot.tension().gamma * pot.k().phi_plus}};
    if (q0_check) {
        auto rep = verify_decay_bounds(sol, pot);
        j["decay"] = {{"algebraic", rep.algebraic},
                      {"zero_bound_ok", rep.zero_bound_ok},
                      {"plus_lower_ok", rep.plus_lower_ok},
                      {"plus_upper_as_printed", rep.plus_upper_as_printed},
                      {"bound_rate_zero", rep.bound_rate_zero},
                      {"bound_rate_plus", rep.bound_rate_plus},
                      {"measured_rate_zero", rep.measured_rate_zero},
                      {"measured_slope_zero", rep.measured_slope_zero},
                      {"measured_rate_plus", rep.measured_rate_plus}};
    }
    write_json(out_path(dir, "profile_tail.json"), j);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_simulate(const std::string& config, const std::string& out) {
    RunConfig cfg = parse_config(config);
    if (!cfg.sim) throw ValidationError("sim: section required");
    if (!cfg.target) throw ValidationError("target: section required for the initial state");
    Setup su = setup_from(cfg);
    const Grid& g = su.md.grid;
    SimParams p = *cfg.sim;
    auto omega = solve_profile(su.pot);
    auto e = TargetSet::from(*cfg.target, g);
    SimState s = well_prepared_init(e, p.epsilon, su.md, su.pot, omega, cfg.target->allow_outside);

    std::string dir = out.empty() ? "." : out;
    auto energy = fmt::output_file(out_path(dir, "energy.csv"));
    energy.print("t,G_formA,G_formB,F_ceps,F_eps,D_eps,W_term,R_term,P_term,Wstar_term,dirichlet,obstacle,mass,"
                 "p_weighted_L1\n");
    int snap = 0;
    auto record = [&](const SimState& st, double dis) {
        auto r = energy_report(st, p, su.md, su.pot);
        auto pr = approx_pressure(st, p, su.md, su.pot);
        energy.print("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", num(st.t), num(r.G_eps_formA), num(r.G_eps_formB),
                     num(r.F_ceps), num(r.F_eps), num(dis), num(r.W_term), num(r.R_term), num(r.P_term),
                     num(r.Wstar_term), num(r.dirichlet_term), num(r.obstacle_term), num(r.mass),
                     num(pr.weighted_L1));
        write_snapshot(out_path(dir, fmt::format("snap_{}.csv", snap++)), g, st.rho, st.phi);
    };
    record(s, 0.0);
    double G0 = energy_total(s, p, su.md, su.pot);
    long last = 0;
    StepInfo last_info;
    auto obs = [&](const SimState& st, const StepInfo& info, long k) {
        last = k;
        last_info = info;
        if (p.output_every > 0 && k % p.output_every == 0) record(st, info.dissipation);
    };
    RunResult rr = run(s, p, su.md, su.pot, obs, true);
    if (p.output_every <= 0 || last % p.output_every != 0) record(s, last_info.dissipation);

    double G1 = energy_total(s, p, su.md, su.pot);
    json sum = {{"steps", rr.steps},
                {"t_end", s.t},
                {"epsilon", p.epsilon},
                {"G_start", G0},
                {"G_end", G1},
                {"mass_end", total_mass(s.rho, g)},
                {"clipped_mass", rr.clipped_mass},
                {"snapshots", snap},
                {"threads", thread_count()}};
    try {
        auto geo = interface_geometry(s, s, su.md, su.pot);
        sum["perimeter_mm"] = geo.perimeter_mm;
        sum["perimeter_geom"] = geo.perimeter_geom;
        sum["interface_pieces"] = geo.contours.size();
    } catch (const EmptyInterface&) {
        sum["interface_pieces"] = 0;
    }
    if (su.md.spec.c_profile != CProfile::Constant) {
        auto nd = check_nondegeneracy(su.md, su.md.spec.lambda);
        sum["nondegenerate"] = nd.passes;
    }
    write_json(out_path(dir, "summary.json"), sum);
    std::cout << sum.dump(2) << "\n";
    return 0;
}

int cmd_gamma_sweep(const std::string& config, const std::string& eps_text, const std::string& out) {
    RunConfig cfg = parse_config(config);
    if (!cfg.target) throw ValidationError("target: section required");
    std::vector<double> eps = cfg.eps_list;
    if (!eps_text.empty()) eps = parse_number_list(eps_text, "--eps");
    if (eps.empty()) throw ValidationError("--eps: no epsilon values given");
    Setup su = setup_from(cfg);
    auto omega = solve_profile(su.pot);
    auto e = TargetSet::from(*cfg.target, su.md.grid);
    auto rows = gamma_limsup_check(e, eps, su.md, su.pot, omega);
    std::string dir = out.empty() ? "." : out;
    auto f = fmt::output_file(out_path(dir, "gamma_sweep.csv"));
    f.print("eps,G_eps,G0,rel_err,tau\n");
    for (const auto& r : rows) {
        f.print("{},{},{},{},{}\n", num(r.eps), num(r.G_eps), num(r.G0), num(r.rel_err), num(r.tau));
        fmt::print("eps {:<8g} G_eps {:.10f} G0 {:.10f} rel err {:.3e} tau {:+.4f}\n", r.eps, r.G_eps, r.G0,
                   r.rel_err, r.tau);
    }
    return 0;
}

int cmd_check(const std::string& config, const std::vector<int>& only, double a_shift, const std::string& out) {
    CheckOptions opt;
    if (!config.empty()) {
        RunConfig cfg = parse_config(config);
        if (cfg.laws) {
            opt.m = cfg.laws->m;
            opt.q = cfg.laws->q;
            opt.cbar = cfg.laws->cbar;
        }
    }
    opt.a_shift = a_shift;
    std::vector<int> ids = only;
    if (ids.empty())
        for (int i = 1; i <= kCriteria; ++i) ids.push_back(i);
    std::vector<CriterionResult> res;
    for (int id : ids) {
        auto r = run_criterion(id, opt);
        fmt::print("[{}] criterion {:2d} {:<36} {:8.1f}s  {}\n", r.pass ? "PASS" : "FAIL", r.id, r.name, r.seconds,
                   r.summary);
        std::fflush(stdout);
        res.push_back(std::move(r));
    }
    json rep = report_json(res);
    write_json(out_path(out.empty() ? "." : out, "check_report.json"), rep);
    return rep["all_pass"].get<bool>() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sharp-interface chemotaxis toolkit"};
    app.require_subcommand(1);
    std::string out;

    LawArgs law;
    auto* c_const = app.add_subcommand("constants", "derived constants as JSON");
    add_law_options(c_const, law);
    c_const->add_option("--out", out, "output directory");

    std::string sample_csv;
    int samples = 2000;
    auto* c_pot = app.add_subcommand("potentials", "double wells and surface tension");
    add_law_options(c_pot, law);
    c_pot->add_option("--sample-csv", sample_csv, "write sampled W, W*, F");
    c_pot->add_option("--samples", samples, "sample count")->check(CLI::PositiveNumber);
    c_pot->add_option("--out", out, "output directory");

    double normA = 1.0;
    bool q0_check = false;
    auto* c_prof = app.add_subcommand("profile", "optimal transition profile");
    add_law_options(c_prof, law);
    c_prof->add_option("--normA", normA, "anisotropic norm of the normal")->check(CLI::PositiveNumber);
    c_prof->add_flag("--q0-check", q0_check, "check the tail bounds");
    c_prof->add_option("--out", out, "output directory");

    std::string config;
    auto* c_sim = app.add_subcommand("simulate", "evolve well-prepared data");
    c_sim->add_option("--config", config, "INI file")->required();
    c_sim->add_option("--out", out, "output directory");

    std::string eps_text;
    auto* c_gam = app.add_subcommand("gamma-sweep", "recovery sequence energies");
    c_gam->add_option("--config", config, "INI file")->required();
    c_gam->add_option("--eps", eps_text, "comma separated, decreasing");
    c_gam->add_option("--out", out, "output directory");

    std::vector<int> only;
    double a_shift = 0;
    auto* c_chk = app.add_subcommand("check", "run the acceptance criteria");
    c_chk->add_option("--config", config, "INI file with a [laws] section");
    c_chk->add_option("--only", only, "criterion ids")->check(CLI::Range(1, kCriteria));
    c_chk->add_option("--perturb-a", a_shift, "add this to the constant a (fault injection)");
    c_chk->add_option("--out", out, "output directory");

    CLI11_PARSE(app, argc, argv);
    configure_threads();

    try {
        if (*c_const) return cmd_constants(law, out);
        if (*c_pot) return cmd_potentials(law, sample_csv, samples, out);
        if (*c_prof) return cmd_profile(law, normA, q0_check, out);
        if (*c_sim) return cmd_simulate(config, out);
        if (*c_gam) return cmd_gamma_sweep(config, eps_text, out);
        if (*c_chk) return cmd_check(config, only, a_shift, out);
    } catch (const ParseError& e) {
        fmt::print(stderr, "parse error: {}\n", e.what());
        return 2;
    } catch (const ValidationError& e) {
        fmt::print(stderr, "invalid configuration: {}\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
    return 0;
}
