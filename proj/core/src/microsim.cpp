// microsim.cpp — RK4 integration of the vibron-chain system
#include "vibrolang/microsim.hpp"

#include "vibrolang/error.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace vibrolang {
namespace {

constexpr double pi = std::numbers::pi;

struct RunOutput {
    std::vector<double> q[2], p[2], e[2], ep, em;
    double max_ratio{1.0};
};

RunOutput run(MicroSystem sys, const TrajectoryConfig& cfg, double dt, long steps) {
    RunOutput out;
    const int m = sys.molecules();
    const double e0 = sys.total_energy();
    auto record = [&] {
        for (int i = 0; i < m; ++i) {
            out.q[i].push_back(sys.vibron_q(i));
            out.p[i].push_back(sys.vibron_p(i));
            out.e[i].push_back(sys.vibron_energy(i));
        }
        if (m == 2) {
            const double qp = sys.vibron_q(0) + sys.vibron_q(1), pp = sys.vibron_p(0) + sys.vibron_p(1);
            const double qm = sys.vibron_q(0) - sys.vibron_q(1), pm = sys.vibron_p(0) - sys.vibron_p(1);
            out.ep.push_back(0.5 * (qp * qp + pp * pp));
            out.em.push_back(0.5 * (qm * qm + pm * pm));
        }
    };
    record();
    const int stride = std::max(1, cfg.sample_stride);
    for (long s = 1; s <= steps; ++s) {
        sys.step(dt);
        if (s % stride == 0) {
            record();
            if (e0 > 0.0) {
                const double ratio = std::abs(sys.total_energy()) / e0;
                out.max_ratio = std::max(out.max_ratio, ratio);
                if (ratio > 10.0) {
                    throw InstabilityError("energy exceeded 10x its initial value at t = " +
                                           std::to_string(double(s) * dt));
                }
            }
        }
    }
    return out;
}

Trajectory simulate(const std::vector<double>& nus, const DiscreteBath& bath,
                    const std::vector<std::vector<double>>& alpha, const std::vector<double>& freqs,
                    const TrajectoryConfig& cfg) {
    if (!(cfg.t_max > 0.0)) throw ConfigError("t_max must be > 0");
    if (cfg.sample_stride < 1) throw ConfigError("sample_stride must be >= 1");
    const double dt = cfg.resolve_dt(bath.omega_max());
    const long steps = std::lround(cfg.t_max / dt);
    const int m = int(nus.size());

    MicroSystem base(nus, freqs, alpha, bath.qfactor);
    if (cfg.phonons == PhononInit::Thermal) base.sample_thermal_phonons(cfg.temperature, cfg.seed);

    auto prepared = [&](bool rotated) {
        MicroSystem s = base;
        const VibronInit inits[2] = {cfg.first, cfg.second};
        for (int i = 0; i < m; ++i) {
            const VibronInit v = inits[i];
            if (rotated) s.set_vibron(i, -v.p, v.q);
            else s.set_vibron(i, v.q, v.p);
        }
        return s;
    };

    RunOutput a = run(prepared(false), cfg, dt, steps);
    if (cfg.phase_average) {
        RunOutput b = run(prepared(true), cfg, dt, steps);
        auto avg = [](std::vector<double>& x, const std::vector<double>& y) {
            for (std::size_t i = 0; i < x.size(); ++i) x[i] = 0.5 * (x[i] + y[i]);
        };
        for (int i = 0; i < m; ++i) avg(a.e[i], b.e[i]);
        avg(a.ep, b.ep);
        avg(a.em, b.em);
        a.max_ratio = std::max(a.max_ratio, b.max_ratio);
    }

    Trajectory tr;
    tr.molecules = m;
    tr.dt = dt;
    tr.seed = cfg.seed;
    tr.max_energy_ratio = a.max_ratio;
    const int stride = std::max(1, cfg.sample_stride);
    tr.times.resize(a.q[0].size());
    for (std::size_t i = 0; i < tr.times.size(); ++i) tr.times[i] = double(i) * stride * dt;
    tr.q1 = std::move(a.q[0]);
    tr.p1 = std::move(a.p[0]);
    tr.e1 = std::move(a.e[0]);
    if (m == 2) {
        tr.q2 = std::move(a.q[1]);
        tr.p2 = std::move(a.p[1]);
        tr.e2 = std::move(a.e[1]);
        tr.eplus = std::move(a.ep);
        tr.eminus = std::move(a.em);
    }
    return tr;
}

} // namespace

double TrajectoryConfig::resolve_dt(double omega_max) const {
    const double limit = 2.0 * pi / (20.0 * omega_max);
    if (dt == 0.0) return 2.0 * pi / (40.0 * omega_max);
    if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
    if (dt > limit) {
        throw ConfigError("dt = " + std::to_string(dt) + " exceeds 2*pi/(20*omega_max) = " + std::to_string(limit));
    }
    return dt;
}

MicroSystem::MicroSystem(std::vector<double> nus, std::vector<double> frequencies,
                         std::vector<std::vector<double>> alpha, double qfactor)
    : nus_(std::move(nus)) {
    if (nus_.empty() || nus_.size() > 2) throw DomainError("MicroSystem: one or two vibrons supported");
    if (alpha.size() != nus_.size()) throw DomainError("MicroSystem: one coupling row per vibron");
    for (const auto& row : alpha)
        if (row.size() != frequencies.size()) throw DomainError("MicroSystem: coupling length mismatch");
    if (!(qfactor > 0.0)) throw DomainError("MicroSystem: qfactor must be > 0");
    a_.resize(nus_.size());
    for (std::size_t k = 0; k < frequencies.size(); ++k) {
        bool coupled = false;
        for (const auto& row : alpha) coupled = coupled || row[k] != 0.0;
        if (!coupled) continue;
        w_.push_back(frequencies[k]);
        damp_.push_back(std::isfinite(qfactor) ? frequencies[k] / qfactor : 0.0);
        for (std::size_t m = 0; m < nus_.size(); ++m) a_[m].push_back(alpha[m][k]);
    }
    y_.assign(2 * nus_.size() + 2 * w_.size(), 0.0);
    k1_ = k2_ = k3_ = k4_ = tmp_ = y_;
}

void MicroSystem::set_vibron(int m, double q, double p) {
    y_.at(2 * m) = q;
    y_.at(2 * m + 1) = p;
}

void MicroSystem::set_phonons(const std::vector<double>& q, const std::vector<double>& p) {
    if (q.size() != w_.size() || p.size() != w_.size()) throw DomainError("set_phonons: length mismatch");
    const std::size_t off = 2 * nus_.size();
    for (std::size_t k = 0; k < w_.size(); ++k) {
        y_[off + 2 * k] = q[k];
        y_[off + 2 * k + 1] = p[k];
    }
}

void MicroSystem::sample_thermal_phonons(double temperature, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const ThermalState th{temperature};
    std::vector<double> q(w_.size()), p(w_.size());
    for (std::size_t k = 0; k < w_.size(); ++k) {
        const double sd = std::sqrt(occupation(w_[k], th) + 0.5);
        q[k] = sd * normal(rng);
        p[k] = sd * normal(rng);
    }
    set_phonons(q, p);
}

double MicroSystem::vibron_energy(int m) const {
    const double q = y_[2 * m], p = y_[2 * m + 1];
    return 0.5 * (q * q + p * p);
}

double MicroSystem::total_energy() const {
    double e = 0.0;
    const std::size_t nm = nus_.size(), off = 2 * nm;
    for (std::size_t m = 0; m < nm; ++m) e += nus_[m] * vibron_energy(int(m));
    for (std::size_t k = 0; k < w_.size(); ++k) {
        const double q = y_[off + 2 * k], p = y_[off + 2 * k + 1];
        e += 0.5 * w_[k] * (q * q + p * p);
        for (std::size_t m = 0; m < nm; ++m) e -= a_[m][k] * q * y_[2 * m];
    }
    return e;
}

void MicroSystem::derivative(const std::vector<double>& y, std::vector<double>& dy) const {
    const std::size_t nm = nus_.size(), off = 2 * nm;
    double force[2] = {0.0, 0.0};
    double qm[2] = {y[0], nm > 1 ? y[2] : 0.0};
    for (std::size_t k = 0; k < w_.size(); ++k) {
        const double q = y[off + 2 * k], p = y[off + 2 * k + 1];
        double drive = 0.0;
        for (std::size_t m = 0; m < nm; ++m) {
            force[m] += a_[m][k] * q;
            drive += a_[m][k] * qm[m];
        }
        dy[off + 2 * k] = w_[k] * p;
        dy[off + 2 * k + 1] = -w_[k] * q + drive - damp_[k] * p;
    }
    for (std::size_t m = 0; m < nm; ++m) {
        dy[2 * m] = nus_[m] * y[2 * m + 1];
        dy[2 * m + 1] = -nus_[m] * y[2 * m] + force[m];
    }
}

void MicroSystem::step(double dt) {
    const std::size_t n = y_.size();
    derivative(y_, k1_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y_[i] + 0.5 * dt * k1_[i];
    derivative(tmp_, k2_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y_[i] + 0.5 * dt * k2_[i];
    derivative(tmp_, k3_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y_[i] + dt * k3_[i];
    derivative(tmp_, k4_);
    for (std::size_t i = 0; i < n; ++i) y_[i] += dt / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
}

void MicroSystem::reverse_momenta() {
    // (Q,P,q,p) -> (Q,-P,q,-p) inverts the flow of this Hamiltonian.
    for (std::size_t i = 1; i < y_.size(); i += 2) y_[i] = -y_[i];
}

Trajectory simulate_single(const MoleculeParams& molecule, const DiscreteBath& bath, const TrajectoryConfig& cfg) {
    if (!(molecule.nu > 0.0)) throw DomainError("simulate_single: nu must be > 0");
    const auto freqs = chain_eigenmodes(bath);
    const auto alpha = vibron_phonon_couplings(bath, molecule.nu, freqs);
    return simulate({molecule.nu}, bath, {alpha}, freqs, cfg);
}

Trajectory simulate_pair(const MoleculeParams& first, const MoleculeParams& second, const DiscreteBath& bath,
                         int j, const TrajectoryConfig& cfg) {
    if (j < 1) throw DomainError("simulate_pair: j must be >= 1");
    if (j >= bath.n) throw DomainError("simulate_pair: molecules must sit inside the chain");
    if (!(first.nu > 0.0) || !(second.nu > 0.0)) throw DomainError("simulate_pair: nu must be > 0");
    const auto freqs = chain_eigenmodes(bath);
    const auto a1 = vibron_phonon_couplings(bath, first.nu, freqs, -j);
    const auto a2 = vibron_phonon_couplings(bath, second.nu, freqs, +j);
    return simulate({first.nu, second.nu}, bath, {a1, a2}, freqs, cfg);
}

double fit_decay_rate(const std::vector<double>& times, const std::vector<double>& energy, double t0, double t1) {
    if (times.size() != energy.size()) throw DomainError("fit_decay_rate: length mismatch");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long n = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t0 || times[i] > t1) continue;
        if (!(energy[i] > 0.0)) throw DomainError("fit_decay_rate: energy must be > 0 in the window");
        const double x = times[i], y = std::log(energy[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) throw DomainError("fit_decay_rate: fewer than two samples in the window");
    const double den = double(n) * sxx - sx * sx;
    return -(double(n) * sxy - sx * sy) / den;
}

DysonAmplitudes dyson_first_order(double t, const std::vector<double>& frequencies,
                                  const std::vector<double>& alpha, double nu) {
    if (t < 0.0) throw DomainError("dyson_first_order: t must be >= 0");
    if (frequencies.size() != alpha.size()) throw DomainError("dyson_first_order: length mismatch");
    using cplx = std::complex<double>;
    // (e^{iδt} - 1)/δ = i t e^{iδt/2} sinc(δt/2), regular at δ = 0
    auto kernel = [t](double delta) {
        const double x = 0.5 * delta * t;
        const double sinc = std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
        return cplx(0.0, t) * std::exp(cplx(0.0, x)) * sinc;
    };
    DysonAmplitudes out;
    out.to_ground.resize(alpha.size());
    out.to_second.resize(alpha.size());
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        out.to_ground[k] = alpha[k] * kernel(frequencies[k] - nu);
        out.to_second[k] = std::sqrt(2.0) * alpha[k] * kernel(frequencies[k] + nu);
    }
    return out;
}

DysonAmplitudes dyson_first_order(double t, const DiscreteBath& bath, double nu) {
    const auto freqs = chain_eigenmodes(bath);
    return dyson_first_order(t, freqs, vibron_phonon_couplings(bath, nu, freqs), nu);
}

} // namespace vibrolang
