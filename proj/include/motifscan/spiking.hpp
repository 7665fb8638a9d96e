#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace motifscan {

/// The eight circuit neurons. IN0/IN1 are regular-spike-train sources; the
/// rest are leaky integrate-and-fire units. Wiring (fixed):
///   IN0 -> E1, IN1 -> E3            (w_sensory, excitatory)
///   E1 -> E2, E3 -> E4              (w_exc, excitatory)
///   E1 -> INH, E3 -> INH            (w_exc_inh, excitatory)
///   INH -> E2, INH -> E4            (w_inh, inhibitory)
///   E2 -> OUT, E4 -> OUT            (w_exc, excitatory)
/// INH only fires when both streams are active (coincidence detection) and
/// then vetoes the relay pair E2/E4, silencing OUT: an exclusive-or.
enum CircuitNeuron : int { kIn0 = 0, kIn1, kE1, kE2, kE3, kE4, kInh, kOut, kNeuronCount };

extern const std::array<std::string_view, kNeuronCount> kNeuronNames;

/// Membrane and synapse constants plus the four synaptic weights. Weights
/// are in voltage-equivalent current units so that
///   dv/dt = (V_rest - v + I_exc - I_inh) / tau
/// holds literally; a presynaptic spike at t adds the weight to the target's
/// current at t + dt, and currents decay with tau_syn.
///
/// The default weights are the component-wise medians of the feasible region
/// found by calibrate() over w_sensory,w_exc in [8,16] (5 steps), w_exc_inh
/// in [2,8] (7 steps), w_inh in [10,30] (5 steps); rerun with
/// `motifscan spike calibrate` to reproduce.
struct SpikingParams {
    double tau_excit = 10.0; // ms, membrane tau of E1..E4 and OUT
    double tau_inhib = 10.0; // ms, membrane tau of INH
    double v_threshold = -50.0;
    double v_rest = -60.0;
    double v_reset = -65.0;
    double v_min = -80.0;
    double v_max = 30.0;
    double refractory_ms = 2.0;
    double tau_syn = 20.0; // ms, decay of both current kinds
    double dt_ms = 0.1;
    double input_rate_hz = 100.0; // regular train driving an active input

    double w_sensory = 10.0;
    double w_exc = 10.0;
    double w_exc_inh = 4.0;
    double w_inh = 25.0;

    /// Throws std::invalid_argument when the voltage ordering
    /// v_min <= v_reset < v_rest < v_threshold <= v_max is violated, or on
    /// non-positive dt/tau/rate, negative refractory, or negative weights.
    void validate() const;
};

struct SpikeRecord {
    double duration_ms = 0.0;
    double dt_ms = 0.0;
    std::array<std::vector<double>, kNeuronCount> spikes; // strictly increasing times
    /// Per-boundary membrane voltage, only when requested (sources stay at
    /// v_rest).
    std::array<std::vector<double>, kNeuronCount> voltage;

    std::size_t spike_count(int neuron, double window_start_ms) const;
};

/// Explicit-Euler simulation of the circuit for one input pattern. An active
/// input emits a regular train starting at t=0. duration_ms must be >= 100
/// (shorter runs cannot express the classification contract). Throws
/// std::invalid_argument on bad params and std::runtime_error if the state
/// turns non-finite (bad dt/weight combinations).
SpikeRecord simulate(const SpikingParams& params, bool in0, bool in1, double duration_ms,
                     bool record_voltage = false);

enum class XorClass : std::uint8_t { Zero = 0, One = 1, Ambiguous = 2 };

std::string_view xor_class_name(XorClass c);

/// Counts OUT spikes in the trailing window of the run: >= 5 is One, <= 1 is
/// Zero, between is Ambiguous. The window must not exceed the duration.
XorClass classify(const SpikeRecord& record, double window_ms);

struct WeightAxis {
    double lo = 0.0;
    double hi = 0.0;
    int steps = 1; // grid points on the axis, >= 1

    double value(int i) const { return steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1); }
};

struct WeightGrid {
    WeightAxis sensory;
    WeightAxis exc;
    WeightAxis exc_inh;
    WeightAxis inh;
};

struct WeightPoint {
    double sensory = 0.0;
    double exc = 0.0;
    double exc_inh = 0.0;
    double inh = 0.0;
};

struct CalibrationResult {
    std::vector<WeightPoint> feasible; // grid scan order
    WeightPoint chosen;                // component-wise lower median of feasible
};

/// Sweeps the weight grid; a point is feasible iff over a 500 ms run with a
/// 400 ms classification window
///   - all four input patterns classify to the XOR truth table,
///   - one active stream propagates to OUT (the driven relay fires),
///   - INH is a coincidence detector: silent with one active input, firing
///     with both,
///   - INH firing suppresses the relay pair (E2/E4 at most one spike in the
///     window under both inputs).
/// Throws std::runtime_error when no grid point is feasible.
CalibrationResult calibrate(const SpikingParams& base, const WeightGrid& grid);

} // namespace motifscan
