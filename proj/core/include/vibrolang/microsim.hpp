// microsim.hpp — classical equations of motion for vibrons on a 1D host chain
#pragma once

#include "vibrolang/model.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace vibrolang {

enum class PhononInit { Rest, Thermal };

struct VibronInit {
    double q{1.0};
    double p{0.0};
};

struct TrajectoryConfig {
    double dt{0.0};  // 0 selects 2π/(40 ω_max)
    double t_max{100.0};
    VibronInit first{};
    VibronInit second{0.0, 0.0};
    PhononInit phonons{PhononInit::Rest};
    double temperature{0.0};
    std::uint64_t seed{0};
    int sample_stride{1};
    // Average energies over the initial conditions (Q,P) and (-P,Q).
    bool phase_average{false};

    /// Resolved step for a chain of band edge omega_max; throws ConfigError if too coarse.
    double resolve_dt(double omega_max) const;
};

struct Trajectory {
    int molecules{1};
    std::vector<double> times;
    std::vector<double> q1, p1, q2, p2;
    std::vector<double> e1, e2, eplus, eminus;
    double dt{0.0};
    std::uint64_t seed{0};
    double max_energy_ratio{1.0};
};

/// Linear system of M vibrons coupled to K chain modes (modes with no coupling dropped).
class MicroSystem {
public:
    MicroSystem(std::vector<double> nus, std::vector<double> frequencies,
                std::vector<std::vector<double>> alpha, double qfactor);

    int molecules() const { return int(nus_.size()); }
    std::size_t modes() const { return w_.size(); }

    void set_vibron(int m, double q, double p);
    void set_phonons(const std::vector<double>& q, const std::vector<double>& p);
    void sample_thermal_phonons(double temperature, std::uint64_t seed);

    double vibron_q(int m) const { return y_[2 * m]; }
    double vibron_p(int m) const { return y_[2 * m + 1]; }
    double vibron_energy(int m) const;
    double total_energy() const;

    void step(double dt);
    void reverse_momenta();
    const std::vector<double>& state() const { return y_; }

private:
    void derivative(const std::vector<double>& y, std::vector<double>& dy) const;

    std::vector<double> nus_;
    std::vector<double> w_;
    std::vector<std::vector<double>> a_;  // a_[m][k]
    std::vector<double> damp_;
    std::vector<double> y_;
    std::vector<double> k1_, k2_, k3_, k4_, tmp_;
};

Trajectory simulate_single(const MoleculeParams& molecule, const DiscreteBath& bath, const TrajectoryConfig& cfg);

/// Two molecules at sites N+1-j and N+1+j.
Trajectory simulate_pair(const MoleculeParams& first, const MoleculeParams& second, const DiscreteBath& bath,
                         int j, const TrajectoryConfig& cfg);

/// Least-squares slope of -log E on [t0, t1].
double fit_decay_rate(const std::vector<double>& times, const std::vector<double>& energy, double t0, double t1);

struct DysonAmplitudes {
    std::vector<std::complex<double>> to_ground;  // |0_ν, 1_k⟩
    std::vector<std::complex<double>> to_second;  // |2_ν, 1_k⟩
};

DysonAmplitudes dyson_first_order(double t, const std::vector<double>& frequencies,
                                  const std::vector<double>& alpha, double nu);
DysonAmplitudes dyson_first_order(double t, const DiscreteBath& bath, double nu);

} // namespace vibrolang
