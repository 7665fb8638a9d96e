#include "motifscan/spiking.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace motifscan {

const std::array<std::string_view, kNeuronCount> kNeuronNames = {"IN0", "IN1", "E1",  "E2",
                                                                 "E3",  "E4",  "INH", "OUT"};

namespace {

constexpr std::array<int, 6> kLifNeurons = {kE1, kE2, kE3, kE4, kInh, kOut};

struct Synapse {
    int pre;
    int post;
    double weight;
    bool inhibitory;
};

std::array<Synapse, 10> wiring(const SpikingParams& p) {
    return {{{kIn0, kE1, p.w_sensory, false},
             {kIn1, kE3, p.w_sensory, false},
             {kE1, kE2, p.w_exc, false},
             {kE3, kE4, p.w_exc, false},
             {kE1, kInh, p.w_exc_inh, false},
             {kE3, kInh, p.w_exc_inh, false},
             {kInh, kE2, p.w_inh, true},
             {kInh, kE4, p.w_inh, true},
             {kE2, kOut, p.w_exc, false},
             {kE4, kOut, p.w_exc, false}}};
}

constexpr double kTimeEps = 1e-9;

} // namespace

void SpikingParams::validate() const {
    if (!(v_min <= v_reset && v_reset < v_rest && v_rest < v_threshold && v_threshold <= v_max))
        throw std::invalid_argument(
            "voltage ordering must satisfy v_min <= v_reset < v_rest < v_threshold <= v_max");
    if (!(tau_excit > 0.0) || !(tau_inhib > 0.0) || !(tau_syn > 0.0))
        throw std::invalid_argument("time constants must be positive");
    if (!(dt_ms > 0.0)) throw std::invalid_argument("dt must be positive");
    if (dt_ms >= std::min({tau_excit, tau_inhib, tau_syn}))
        throw std::invalid_argument("dt must be smaller than every time constant");
    if (refractory_ms < 0.0) throw std::invalid_argument("refractory time must be >= 0");
    if (!(input_rate_hz > 0.0)) throw std::invalid_argument("input rate must be positive");
    if (w_sensory < 0.0 || w_exc < 0.0 || w_exc_inh < 0.0 || w_inh < 0.0)
        throw std::invalid_argument("weights must be >= 0");
}

std::size_t SpikeRecord::spike_count(int neuron, double window_start_ms) const {
    const auto& times = spikes[neuron];
    const auto first =
        std::lower_bound(times.begin(), times.end(), window_start_ms - kTimeEps);
    return static_cast<std::size_t>(times.end() - first);
}

SpikeRecord simulate(const SpikingParams& params, bool in0, bool in1, double duration_ms,
                     bool record_voltage) {
    params.validate();
    if (duration_ms < 100.0)
        throw std::invalid_argument("simulation duration must be >= 100 ms");

    const auto synapses = wiring(params);
    const double dt = params.dt_ms;
    const double decay = 1.0 - dt / params.tau_syn;
    const double period = 1000.0 / params.input_rate_hz;
    const auto steps = static_cast<long long>(std::llround(duration_ms / dt));

    SpikeRecord record;
    record.duration_ms = duration_ms;
    record.dt_ms = dt;

    std::array<double, kNeuronCount> v{};
    std::array<double, kNeuronCount> i_exc{};
    std::array<double, kNeuronCount> i_inh{};
    std::array<double, kNeuronCount> refractory_until{};
    std::array<double, kNeuronCount> pending_exc{};
    std::array<double, kNeuronCount> pending_inh{};
    v.fill(params.v_rest);
    refractory_until.fill(-1.0);

    const std::array<bool, 2> active = {in0, in1};
    std::array<double, 2> next_source = {0.0, 0.0};

    const auto deliver = [&](int pre) {
        for (const auto& syn : synapses) {
            if (syn.pre != pre) continue;
            (syn.inhibitory ? pending_inh : pending_exc)[syn.post] += syn.weight;
        }
    };

    for (long long k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * dt;

        if (k > 0) {
            for (int n : kLifNeurons) {
                const double tau = n == kInh ? params.tau_inhib : params.tau_excit;
                if (t <= refractory_until[n] + kTimeEps)
                    v[n] = params.v_reset;
                else
                    v[n] += dt * (params.v_rest - v[n] + i_exc[n] - i_inh[n]) / tau;
                v[n] = std::clamp(v[n], params.v_min, params.v_max);
                if (!std::isfinite(v[n]))
                    throw std::runtime_error("non-finite membrane state; check dt and weights");
                // Currents decay, then spikes from the previous boundary
                // arrive (one full dt after emission, undecayed on arrival).
                i_exc[n] = i_exc[n] * decay + pending_exc[n];
                i_inh[n] = i_inh[n] * decay + pending_inh[n];
            }
            pending_exc.fill(0.0);
            pending_inh.fill(0.0);
        }

        for (int s = 0; s < 2; ++s) {
            if (!active[s]) continue;
            while (next_source[s] <= t + kTimeEps && next_source[s] <= duration_ms + kTimeEps) {
                record.spikes[s].push_back(next_source[s]);
                deliver(s);
                next_source[s] += period;
            }
        }

        for (int n : kLifNeurons) {
            if (v[n] >= params.v_threshold && t > refractory_until[n] + kTimeEps) {
                record.spikes[n].push_back(t);
                v[n] = params.v_reset;
                refractory_until[n] = t + params.refractory_ms;
                deliver(n);
            }
        }

        if (record_voltage)
            for (int n = 0; n < kNeuronCount; ++n) record.voltage[n].push_back(v[n]);
    }

    return record;
}

std::string_view xor_class_name(XorClass c) {
    switch (c) {
    case XorClass::Zero: return "0";
    case XorClass::One: return "1";
    case XorClass::Ambiguous: return "ambiguous";
    }
    return "?";
}

XorClass classify(const SpikeRecord& record, double window_ms) {
    if (window_ms > record.duration_ms + kTimeEps)
        throw std::invalid_argument("classification window exceeds simulated duration");
    const std::size_t n = record.spike_count(kOut, record.duration_ms - window_ms);
    if (n >= 5) return XorClass::One;
    if (n <= 1) return XorClass::Zero;
    return XorClass::Ambiguous;
}

CalibrationResult calibrate(const SpikingParams& base, const WeightGrid& grid) {
    constexpr double kDuration = 500.0;
    constexpr double kWindow = 400.0;
    const double window_start = kDuration - kWindow;

    CalibrationResult result;
    for (int a = 0; a < grid.sensory.steps; ++a) {
        for (int b = 0; b < grid.exc.steps; ++b) {
            for (int c = 0; c < grid.exc_inh.steps; ++c) {
                for (int d = 0; d < grid.inh.steps; ++d) {
                    SpikingParams p = base;
                    p.w_sensory = grid.sensory.value(a);
                    p.w_exc = grid.exc.value(b);
                    p.w_exc_inh = grid.exc_inh.value(c);
                    p.w_inh = grid.inh.value(d);

                    const SpikeRecord r00 = simulate(p, false, false, kDuration);
                    const SpikeRecord r01 = simulate(p, false, true, kDuration);
                    const SpikeRecord r10 = simulate(p, true, false, kDuration);
                    const SpikeRecord r11 = simulate(p, true, true, kDuration);

                    const bool truth_table = classify(r00, kWindow) == XorClass::Zero &&
                                             classify(r01, kWindow) == XorClass::One &&
                                             classify(r10, kWindow) == XorClass::One &&
                                             classify(r11, kWindow) == XorClass::Zero;
                    // One active stream must drive its relay through to OUT.
                    const bool propagates = r10.spike_count(kE2, window_start) >= 5 &&
                                            r01.spike_count(kE4, window_start) >= 5;
                    // Coincidence detection: INH silent for single inputs,
                    // firing for the double input.
                    const bool coincidence = r10.spike_count(kInh, 0.0) == 0 &&
                                             r01.spike_count(kInh, 0.0) == 0 &&
                                             r11.spike_count(kInh, window_start) >= 5;
                    // The veto must actually silence the relay pair.
                    const bool vetoed = r11.spike_count(kE2, window_start) <= 1 &&
                                        r11.spike_count(kE4, window_start) <= 1;

                    if (truth_table && propagates && coincidence && vetoed)
                        result.feasible.push_back(
                            {p.w_sensory, p.w_exc, p.w_exc_inh, p.w_inh});
                }
            }
        }
    }

    if (result.feasible.empty())
        throw std::runtime_error("calibration found no feasible weights; widen the grid");

    const auto median_of = [&](double WeightPoint::* member) {
        std::vector<double> values;
        values.reserve(result.feasible.size());
        for (const auto& point : result.feasible) values.push_back(point.*member);
        std::sort(values.begin(), values.end());
        return values[(values.size() - 1) / 2];
    };
    result.chosen = {median_of(&WeightPoint::sensory), median_of(&WeightPoint::exc),
                     median_of(&WeightPoint::exc_inh), median_of(&WeightPoint::inh)};
    return result;
}

} // namespace motifscan
