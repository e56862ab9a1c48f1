// commands.cpp — command parameter parsing and execution
#include "commands.hpp"

#include "config.hpp"

#include "vibrolang/cavity.hpp"
#include "vibrolang/error.hpp"
#include "vibrolang/kernels.hpp"
#include "vibrolang/microsim.hpp"
#include "vibrolang/spectra.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <optional>

namespace vibrolang::cli {

namespace {

using nlohmann::json;

constexpr std::size_t kMaxGrid = 5'000'000;

std::vector<double> parse_grid(Node n, double lo, double hi, double step) {
    lo = n.number("min", lo);
    hi = n.number("max", hi);
    step = n.number("step", step);
    n.finish();
    if (!(hi > lo)) throw ConfigError(n.path() + ": max must exceed min");
    if (!(step > 0.0)) throw ConfigError(n.path() + ".step: must be > 0");
    const double count = std::floor((hi - lo) / step + 1e-9) + 1.0;
    if (count > double(kMaxGrid)) throw ConfigError(n.path() + ": more than 5e6 points");
    std::vector<double> g(static_cast<std::size_t>(count));
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = lo + double(i) * step;
    return g;
}

MoleculeParams parse_molecule(Node n, double nu, double gamma, double lambda) {
    MoleculeParams m;
    m.nu = n.number("nu", nu);
    m.gamma = n.number("gamma", gamma);
    m.lambda = n.number("lambda", lambda);
    n.finish();
    m.validate();
    return m;
}

KernelParams parse_kernel(Node n, double nu, double gamma_m, double omega_max) {
    KernelParams kp;
    kp.nu = nu;
    kp.gamma_m = n.number("gamma_m", gamma_m);
    kp.omega_max = n.number_or_inf("omega_max", omega_max);
    n.finish();
    kp.validate();
    return kp;
}

/// One of temperature (rad/ps), temperature_K or nbar (occupation at the vibron frequency).
ThermalState parse_thermal(Node n, double nu) {
    const int given = int(n.has("temperature")) + int(n.has("temperature_K")) + int(n.has("nbar"));
    if (given > 1) throw ConfigError(n.path() + ": give only one of temperature, temperature_K, nbar");
    ThermalState th;
    if (n.has("temperature")) th.temperature = n.number("temperature", 0.0);
    else if (n.has("temperature_K")) th.temperature = n.number("temperature_K", 0.0) * kKelvinToRadPerPs;
    else if (n.has("nbar")) {
        const double nbar = n.number("nbar", 0.0);
        if (nbar < 0.0) throw ConfigError(n.path() + ".nbar: must be >= 0");
        th = ThermalState::from_occupation(nbar, nu);
    }
    n.finish();
    if (th.temperature < 0.0) throw ConfigError(n.path() + ": temperature must be >= 0");
    return th;
}

/// kind "none" yields an empty density.
SpectralDensity parse_phonons(Node n, const char* kind_default, double coupling) {
    const std::string kind = n.string("kind", kind_default, {"none", "1d", "3d"});
    coupling = n.number("coupling", coupling);
    const double omega_max = n.number("omega_max", 3.0);
    std::optional<double> omega_min;
    if (n.has("omega_min")) omega_min = n.number("omega_min", 0.0);
    n.finish();
    if (kind == "none") return SpectralDensity::from_lines({});
    if (omega_min && kind != "1d") throw ConfigError(n.path() + ".omega_min: only meaningful for kind 1d");
    SpectralDensity sd = kind == "1d" ? SpectralDensity::one_d(coupling, omega_max)
                                      : SpectralDensity::three_d(coupling, omega_max);
    if (omega_min) sd.omega_min = *omega_min;
    sd.validate();
    return sd;
}

DiscreteBath parse_bath(Node n, double omega_max, double gamma_m, double q) {
    const int count = n.integer("n", 500);
    omega_max = n.number("omega_max", omega_max);
    gamma_m = n.number("gamma_m", gamma_m);
    q = n.number_or_inf("qfactor", q);
    n.finish();
    if (count < 1 || count > 200000) throw ConfigError(n.path() + ".n: must be in 1..200000");
    return DiscreteBath::from_targets(count, omega_max, gamma_m, q);
}

TrajectoryConfig parse_trajectory(Node& n, std::uint64_t seed) {
    TrajectoryConfig cfg;
    cfg.t_max = n.number("t_max", 100.0);
    cfg.dt = n.number("dt", 0.0);
    cfg.sample_stride = n.integer("sample_stride", 10);
    cfg.phase_average = n.boolean("phase_average", true);
    const std::string init = n.string("phonon_init", "rest", {"rest", "thermal"});
    cfg.phonons = init == "thermal" ? PhononInit::Thermal : PhononInit::Rest;
    cfg.temperature = n.number("phonon_temperature", 0.0);
    cfg.seed = seed;
    if (!(cfg.t_max > 0.0)) throw ConfigError(n.path() + ".t_max: must be > 0");
    if (cfg.sample_stride < 1) throw ConfigError(n.path() + ".sample_stride: must be >= 1");
    if (cfg.temperature < 0.0) throw ConfigError(n.path() + ".phonon_temperature: must be >= 0");
    return cfg;
}

std::string tag(double x) { return fmt::format("{:g}", x); }

json flags(bool violated, const char* name) { return violated ? json{{name, true}} : json::object(); }

// relaxation: vibron energy on the discrete chain with the Markovian overlay.
Job relaxation(Node p, std::uint64_t seed) {
    const double nu = p.number("nu", 1.0);
    const DiscreteBath bath = parse_bath(p.child("bath"), 7.0 * nu, nu / 20.0, 50.0);
    TrajectoryConfig cfg = parse_trajectory(p, seed);
    const auto kgrid = parse_grid(p.child("kernel_grid"), -1.5 * bath.omega_max(), 1.5 * bath.omega_max(),
                                  bath.omega_max() / 400.0);
    p.finish();
    if (!(nu > 0.0)) throw ConfigError("params.nu: must be > 0");
    cfg.resolve_dt(bath.omega_max());
    return [=] {
        MoleculeParams m;
        m.nu = nu;
        const Trajectory tr = simulate_single(m, bath, cfg);
        const ContinuumBath cb = continuum_reduction(bath, nu);
        const KernelParams kp = KernelParams::from_bath(cb, nu);
        RunOutput out;
        Table traj{"trajectory", {}, {}, "vibron energy", false};
        traj.add("t", tr.times);
        traj.add("q", tr.q1);
        traj.add("p", tr.p1);
        traj.add("E", tr.e1);
        Table theory{"theory", {}, {}, "Markovian overlay E0 exp(-Gamma_m t)", false};
        std::vector<double> e(tr.times.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = tr.e1.front() * std::exp(-kp.gamma_m * tr.times[i]);
        theory.add("t", tr.times);
        theory.add("E", e);
        Table kern{"kernel", {}, {}, "memory kernel and susceptibility", false};
        std::vector<double> re(kgrid.size()), im(kgrid.size()), chi(kgrid.size());
        for (std::size_t i = 0; i < kgrid.size(); ++i) {
            const auto g = gamma_freq(kgrid[i], kp);
            re[i] = g.real;
            im[i] = g.imag;
            chi[i] = std::norm(susceptibility(kgrid[i], kp));
        }
        kern.add("omega", kgrid);
        kern.add("re_gamma", re);
        kern.add("im_gamma", im);
        kern.add("abs_chi2", chi);
        out.tables = {traj, theory, kern};
        const double t_fit = std::min(cfg.t_max, 3.0 / std::max(kp.gamma_m, 1e-300));
        out.summary = {{"gamma_m", kp.gamma_m},
                       {"omega_max", kp.omega_max},
                       {"modes", bath.n},
                       {"dt", tr.dt},
                       {"seed", tr.seed},
                       {"fitted_rate", kp.gamma_m > 0.0 ? fit_decay_rate(tr.times, tr.e1, 0.0, t_fit) : 0.0},
                       {"max_energy_ratio", tr.max_energy_ratio}};
        return out;
    };
}

// collective: Γ and Γ12 kernels for several separations, optional pair simulation.
Job collective(Node p, std::uint64_t seed) {
    const double nu = p.number("nu", 1.0);
    const KernelParams kp = parse_kernel(p.child("kernel"), nu, nu / 20.0, 7.0 * nu);
    if (kp.markovian()) throw ConfigError("params.kernel.omega_max: collective kernels need a finite band edge");
    std::vector<int> js;
    for (double j : p.numbers("j", {1, 2, 3})) {
        if (j < 1 || j != std::floor(j)) throw ConfigError("params.j: separations must be positive integers");
        js.push_back(int(j));
    }
    const auto tgrid = parse_grid(p.child("time_grid"), 0.0, 30.0 / nu, 0.01 / nu);
    const auto wgrid = parse_grid(p.child("omega_grid"), -0.995 * kp.omega_max, 0.995 * kp.omega_max,
                                  kp.omega_max / 500.0);
    std::optional<DiscreteBath> bath;
    TrajectoryConfig cfg;
    int sim_j = 1;
    std::string mode;
    if (p.has("simulation")) {
        Node s = p.child("simulation");
        bath = parse_bath(s.child("bath"), kp.omega_max, kp.gamma_m, kInf);
        sim_j = s.integer("j", 1);
        mode = s.string("mode", "minus", {"minus", "plus", "single"});
        cfg = parse_trajectory(s, seed);
        s.finish();
        if (sim_j < 1 || 2 * sim_j > bath->n) throw ConfigError("params.simulation.j: must be in 1..n/2");
        cfg.resolve_dt(bath->omega_max());
        const double a = 1.0 / std::sqrt(2.0);
        cfg.first = mode == "single" ? VibronInit{1.0, 0.0} : VibronInit{a, 0.0};
        cfg.second = mode == "single" ? VibronInit{0.0, 0.0} : VibronInit{mode == "plus" ? a : -a, 0.0};
    }
    p.finish();
    return [=] {
        RunOutput out;
        Table kt{"kernel_time", {}, {}, "individual and collective kernels", false};
        kt.add("t", tgrid);
        std::vector<double> g(tgrid.size());
        for (std::size_t i = 0; i < g.size(); ++i) g[i] = gamma_time(tgrid[i], kp);
        kt.add("gamma", g);
        for (int j : js) {
            for (std::size_t i = 0; i < g.size(); ++i) g[i] = collective_gamma_time(tgrid[i], j, kp);
            kt.add(fmt::format("gamma12_j{}", j), g);
        }
        Table kf{"kernel_freq", {}, {}, "kernels in frequency", false};
        kf.add("omega", wgrid);
        std::vector<double> re(wgrid.size()), im(wgrid.size());
        for (std::size_t i = 0; i < wgrid.size(); ++i) {
            const auto v = gamma_freq(wgrid[i], kp);
            re[i] = v.real;
            im[i] = v.imag;
        }
        kf.add("re_gamma", re);
        kf.add("im_gamma", im);
        for (int j : js) {
            for (std::size_t i = 0; i < wgrid.size(); ++i) {
                const cplx v = collective_gamma_freq(wgrid[i], j, kp);
                re[i] = v.real();
                im[i] = v.imag();
            }
            kf.add(fmt::format("re_gamma12_j{}", j), re);
            kf.add(fmt::format("im_gamma12_j{}", j), im);
        }
        out.tables = {kt, kf};
        out.summary = {{"gamma_m", kp.gamma_m}, {"omega_max", kp.omega_max}, {"nu", nu}};
        if (bath) {
            MoleculeParams m;
            m.nu = nu;
            const Trajectory tr = simulate_pair(m, m, *bath, sim_j, cfg);
            Table pair{"pair", {}, {}, "pair energies", false};
            pair.add("t", tr.times);
            pair.add("E1", tr.e1);
            pair.add("E2", tr.e2);
            pair.add("E_plus", tr.eplus);
            pair.add("E_minus", tr.eminus);
            out.tables.push_back(pair);
            out.summary["simulation"] = {{"j", sim_j}, {"mode", mode}, {"dt", tr.dt}, {"seed", tr.seed}};
        }
        return out;
    };
}

Table momentum_table(const std::vector<double>& taus, const KernelParams& kp, const ThermalState& th, bool numeric) {
    Table t{"correlation", {}, {}, "<P(tau)P(0)>", false};
    t.add("tau", taus);
    std::vector<double> re(taus.size()), im(taus.size());
    for (std::size_t i = 0; i < taus.size(); ++i) {
        const cplx c = momentum_correlation(taus[i], kp, th);
        re[i] = c.real();
        im[i] = c.imag();
    }
    t.add("re_pp", re);
    t.add("im_pp", im);
    if (numeric) {
        for (std::size_t i = 0; i < taus.size(); ++i) {
            const cplx c = momentum_correlation_numeric(taus[i], kp, th);
            re[i] = c.real();
            im[i] = c.imag();
        }
        t.add("re_pp_quadrature", re);
        t.add("im_pp_quadrature", im);
    }
    return t;
}

// absorption: vibronic spectrum by double sum, Bessel single sum, or FFT with phonons.
Job absorption(Node p) {
    const MoleculeParams m = parse_molecule(p.child("molecule"), 1.0, 0.025, 1.0);
    const KernelParams kp = parse_kernel(p.child("kernel"), m.nu, 0.1 * m.nu, kInf);
    const ThermalState th = parse_thermal(p.child("thermal"), m.nu);
    const std::string method = p.string("method", "discrete", {"discrete", "bessel", "full"});
    const SpectralDensity sd = parse_phonons(p.child("phonons"), "none", 0.0);
    if (method != "full" && !sd.empty()) throw ConfigError("params.phonons: only used with method \"full\"");
    const auto grid = parse_grid(p.child("grid"), -2.0 * m.nu, 6.0 * m.nu, m.gamma / 10.0);
    std::optional<std::vector<double>> taus;
    bool numeric = false;
    if (p.has("correlation")) {
        Node c = p.child("correlation");
        numeric = c.boolean("quadrature", false);
        Node tg = c.child("grid");
        taus = parse_grid(tg, 0.0, 40.0 / m.nu, 0.02 / m.nu);
        c.finish();
    }
    p.finish();
    return [=] {
        RunOutput out;
        Table s{"spectrum", {}, {}, "P_e / P_0", false};
        s.add("detuning", grid);
        const double g2 = m.gamma * m.gamma;
        std::vector<double> v(grid.size());
        if (method == "full") {
            const SampledSpectrum r = absorption_full(grid, m, kp, sd, th);
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = r.value[i] * g2;
            out.summary = {{"polaron_shift", r.polaron_shift}, {"dt", r.dt}, {"horizon", r.horizon},
                           {"fft_size", r.fft_size}};
        } else {
            const LineSpectrum r = method == "bessel" ? absorption_bessel(grid, m, kp, th)
                                                      : absorption_discrete(grid, m, kp, th);
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = r.value[i] * g2;
            out.summary = {{"lines", r.lines.size()}, {"n_max", r.n_max}, {"tail_bound", r.tail_bound}};
            out.summary.update(flags(r.validity_violated, "validity_violated"));
        }
        s.add("p_e_over_p0", v);
        out.tables.push_back(s);
        if (taus) out.tables.push_back(momentum_table(*taus, kp, th, numeric));
        const auto e = effective_params(kp);
        out.summary["method"] = method;
        out.summary["nu_prime"] = e.nu_prime;
        out.summary["gamma_prime"] = e.gamma_prime;
        out.summary["temperature"] = th.temperature;
        out.summary["franck_condon"] = franck_condon(m.lambda, occupation(m.nu, th));
        return out;
    };
}

// phonon-wing: ZPL with phonon wing at several temperatures, Debye-Waller curves.
Job phonon_wing(Node p) {
    const MoleculeParams m = parse_molecule(p.child("molecule"), 6.0, 0.02, 0.0);
    const KernelParams kp = parse_kernel(p.child("kernel"), m.nu, 0.0, kInf);
    const SpectralDensity sd = parse_phonons(p.child("phonons"), "3d", 0.02);
    if (sd.empty()) throw ConfigError("params.phonons.kind: phonon-wing needs a 1d or 3d density");
    const auto temps = p.numbers("temperatures_K", {0.0, 10.0, 30.0, 100.0});
    for (double t : temps)
        if (t < 0.0) throw ConfigError("params.temperatures_K: temperatures must be >= 0");
    const auto grid = parse_grid(p.child("grid"), -1.5 * sd.omega_max, 1.5 * sd.omega_max, m.gamma / 8.0);
    const bool log_y = p.boolean("log_scale", true);
    std::optional<std::vector<double>> dw_couplings, dw_temps;
    if (p.has("debye_waller")) {
        Node d = p.child("debye_waller");
        dw_couplings = d.numbers("couplings", {sd.coupling});
        dw_temps = parse_grid(d.child("temperature_K"), 0.0, 50.0, 1.0);
        d.finish();
        for (double c : *dw_couplings)
            if (!(c >= 0.0)) throw ConfigError("params.debye_waller.couplings: must be >= 0");
    }
    p.finish();
    return [=] {
        RunOutput out;
        out.summary = {{"polaron_shift", polaron_shift(sd)}, {"debye_waller", json::object()}};
        if (!temps.empty()) {
            Table w{"wing", {}, {}, "absorption with phonon wing", log_y};
            w.add("detuning", grid);
            for (double tk : temps) {
                const ThermalState th{tk * kKelvinToRadPerPs};
                const SampledSpectrum r = absorption_full(grid, m, kp, sd, th);
                std::vector<double> v(r.value);
                for (double& x : v) x *= m.gamma * m.gamma;
                w.add("T_" + tag(tk) + "K", v);
                out.summary["debye_waller"][tag(tk) + "K"] = debye_waller(sd, th);
            }
            out.tables.push_back(w);
        }
        if (dw_couplings) {
            Table d{"debye_waller", {}, {}, "Debye-Waller factor", false};
            d.add("T_K", *dw_temps);
            for (double c : *dw_couplings) {
                SpectralDensity s = sd;
                s.coupling = c;
                std::vector<double> f(dw_temps->size());
                for (std::size_t i = 0; i < f.size(); ++i)
                    f[i] = debye_waller(s, ThermalState{(*dw_temps)[i] * kKelvinToRadPerPs});
                d.add("coupling_" + tag(c), f);
            }
            out.tables.push_back(d);
        }
        return out;
    };
}

Table transmission_table(const std::string& name, const TransmissionResult& r) {
    Table t{name, {}, {}, "|T|^2", false};
    t.add("detuning", r.envelope);
    std::vector<double> re(r.t.size()), im(r.t.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
        re[i] = r.t[i].real();
        im[i] = r.t[i].imag();
    }
    t.add("re_T", re);
    t.add("im_T", im);
    t.add("abs_T2", r.abs_t2);
    return t;
}

// cavity: transmission at ω_c = ω_ℓ locked to the shifted ZPL, optional two-level reference.
Job cavity(Node p) {
    const MoleculeParams m = parse_molecule(p.child("molecule"), 6.0, 0.05, 0.8);
    const KernelParams kp = parse_kernel(p.child("kernel"), m.nu, 0.08 * m.nu, kInf);
    const ThermalState th = parse_thermal(p.child("thermal"), m.nu);
    const SpectralDensity sd = parse_phonons(p.child("phonons"), "none", 0.0);
    Node c = p.child("cavity");
    CavityParams cav;
    cav.kappa = c.number("kappa", 1.0);
    cav.g = c.number("g", m.nu / 2.0);
    const double detuning = c.number("detuning", 0.0);
    c.finish();
    cav.validate();
    const auto grid = parse_grid(p.child("grid"), -6.0, 6.0, cav.kappa / 200.0);
    const bool reference = p.boolean("two_level_reference", false);
    p.finish();
    return [=] {
        const SpectralDensity* phon = sd.empty() ? nullptr : &sd;
        const double shift = phon ? polaron_shift(sd) : 0.0;
        CavityParams cp = cav;
        cp.omega_l = -shift;
        cp.omega_c = -shift + detuning;
        const TransmissionResult r = transmission(grid, cp, m, kp, th, phon);
        RunOutput out;
        out.tables.push_back(transmission_table("transmission", r));
        const double f_fc = franck_condon(m.lambda, occupation(m.nu, th));
        const double f_dw = phon ? debye_waller(sd, th) : 1.0;
        const double g_eff = effective_rabi(cav.g, f_fc, f_dw);
        json peaks = json::array();
        for (const auto& pk : find_peaks(grid, r.abs_t2)) peaks.push_back({pk.position, pk.height});
        out.summary = {{"g_eff", g_eff},
                       {"franck_condon", f_fc},
                       {"debye_waller", f_dw},
                       {"cooperativity_eff", g_eff * g_eff / (cav.kappa * m.gamma)},
                       {"polaron_shift", shift},
                       {"peaks", peaks}};
        out.summary.update(flags(r.factorization_warning, "factorization_warning"));
        if (reference) {
            MoleculeParams bare = m;
            bare.lambda = 0.0;
            CavityParams cb = cav;
            cb.omega_c = detuning;
            out.tables.push_back(transmission_table("transmission_two_level", transmission(grid, cb, bare, kp, th)));
        }
        return out;
    };
}

// polariton: cross-talk rates and population dynamics.
Job polariton(Node p) {
    const MoleculeParams m = parse_molecule(p.child("molecule"), 6.0, 0.01, 0.2);
    const KernelParams kp = parse_kernel(p.child("kernel"), m.nu, 0.4, kInf);
    const ThermalState th = parse_thermal(p.child("thermal"), m.nu);
    const double g = p.number("g", m.nu / 2.0);
    const std::string form = p.string("form", "two-term", {"two-term", "main"});
    const double gp = p.number("gamma_plus", 0.25);
    const double gm = p.number("gamma_minus", 0.25);
    const double pu0 = p.number("P_U0", 1.0), pl0 = p.number("P_L0", 0.0);
    const auto t = parse_grid(p.child("time_grid"), 0.0, 20.0, 0.01);
    p.finish();
    if (!(g > 0.0)) throw ConfigError("params.g: must be > 0");
    if (gp < 0.0 || gm < 0.0) throw ConfigError("params.gamma_plus/gamma_minus: must be >= 0");
    if (pu0 < 0.0 || pl0 < 0.0) throw ConfigError("params.P_U0/P_L0: must be >= 0");
    return [=] {
        const auto [wp, wm] = polariton_frequencies(0.0, g, m.lambda, m.nu);
        const PolaritonRates r = form == "main" ? polariton_rates_main(m, kp, th, wp, wm, g)
                                                : polariton_rates(m, kp, th, wp, wm, g);
        const PopulationTrace pop = polariton_populations(t, pu0, pl0, gp, gm, r.kappa_plus, r.kappa_minus);
        RunOutput out;
        Table tab{"populations", {}, {}, "polariton populations", false};
        tab.add("t", pop.t);
        tab.add("P_U", pop.P_U);
        tab.add("P_L", pop.P_L);
        out.tables.push_back(tab);
        out.summary = {{"omega_plus", wp}, {"omega_minus", wm}, {"kappa_plus", r.kappa_plus},
                       {"kappa_minus", r.kappa_minus}, {"form", form}};
        out.summary.update(flags(r.weak_coupling_violated, "weak_coupling_violated"));
        return out;
    };
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"relaxation", "collective", "absorption",
                                                "phonon-wing", "cavity", "polariton"};
    return names;
}

Job prepare(const std::string& command, const nlohmann::json& params, std::uint64_t seed) {
    Node p(params, "params");
    if (command == "relaxation") return relaxation(p, seed);
    if (command == "collective") return collective(p, seed);
    if (command == "absorption") return absorption(p);
    if (command == "phonon-wing") return phonon_wing(p);
    if (command == "cavity") return cavity(p);
    if (command == "polariton") return polariton(p);
    throw ConfigError("command: unknown command \"" + command + "\"");
}

}  // namespace vibrolang::cli
