#pragma once

#include <functional>
#include <vector>

#include "pks/fields.hpp"
#include "pks/potentials.hpp"

namespace pks {

struct SimParams {
    double epsilon = 0.1;
    double alpha0 = 1.0;
    double beta0 = 1.0;  // fixed, see the scaling reduction
    double chi = 1.0;    // fixed
    double dt = 0.0;     // <= 0 selects the automatic step
    double cfl = 0.4;
    double t_end = 0.0;
    int output_every = 0;  // steps between snapshots, 0 = start and end only
};

struct SimState {
    double t = 0;
    Field rho, phi;
    double mass = 0;  // carried total; 0 means take it from rho on the next step
    double clipped_mass = 0;
};

struct StepInfo {
    double dt = 0;
    double dissipation = 0;  // alpha0 int rho |v|^2 + eps int (d_t phi)^2
    double rho_rate = 0;     // worst outflow rate, dt * rho_rate <= 1 keeps rho >= 0
    double clipped = 0;
};

struct StepOptions {
    bool dissipation = false;
    double t_stop = 1e300;  // never step past this time
};

// scratch buffers shared by both kernels
struct Workspace {
    Field mu, rho_new, lap, fx, fy, cx, cy, cell_buf, clip;
    void resize(const Grid& g);
};

// automatic time step for the current state
double auto_dt(const SimState& s, const SimParams& p, const Medium& md, const Potentials& pot);

// serial face-loop kernel, kept as the reference for the parallel one
StepInfo step_reference(SimState& s, const SimParams& p, const Medium& md, const Potentials& pot, Workspace& ws,
                        const StepOptions& opt = {});
// cell-gather kernel, OpenMP parallel; bitwise equal fields to step_reference
StepInfo step(SimState& s, const SimParams& p, const Medium& md, const Potentials& pot, Workspace& ws,
              const StepOptions& opt = {});

double total_mass(const Field& rho, const Grid& g);

struct Snapshot {
    long step = 0;
    double t = 0;
    Field rho, phi;
};

struct RunResult {
    std::vector<Snapshot> snapshots;
    long steps = 0;
    double clipped_mass = 0;
    std::vector<double> step_dissipation;  // filled only when monitoring
};

// per-step observer: state after the step, the step info, step index
using StepObserver = std::function<void(const SimState&, const StepInfo&, long)>;

RunResult run(SimState& s, const SimParams& p, const Medium& md, const Potentials& pot,
              const StepObserver& obs = {}, bool want_dissipation = false);

} // namespace pks
