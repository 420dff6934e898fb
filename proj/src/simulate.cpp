// SPDX-License-Identifier: Apache-2.0
#include "crossdip/simulate.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace crossdip::simulate {

namespace {

constexpr double kPi = std::numbers::pi;

// Per-trial draw order everywhere below: positions, then preambles (measured
// strategy only), then the K*K data fading matrix in receiver-major link
// order. Changing this breaks seed reproducibility.

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

MeanSe mean_se(std::span<const double> xs) {
    MeanSe out;
    const auto n = xs.size();
    if (n == 0) return out;
    double sum = 0.0;
    for (double x : xs) sum += x;
    out.mean = sum / static_cast<double>(n);
    if (n < 2) return out;
    double ss = 0.0;
    for (double x : xs) {
        const double d = x - out.mean;
        ss += d * d;
    }
    out.se = std::sqrt(ss / (static_cast<double>(n - 1) * static_cast<double>(n)));
    return out;
}

double mean_of(std::span<const double> xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

// Per-worker scratch. Trials only ever write their own output slot, so the
// run is reproducible for any worker count.
template <class MakeWs, class Body>
void run_trials(long trials, int threads, MakeWs make_ws, Body body) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    if (static_cast<long>(threads) > trials) threads = static_cast<int>(std::max<long>(1, trials));
    if (threads == 1) {
        auto ws = make_ws();
        for (long t = 0; t < trials; ++t) body(t, ws);
        return;
    }
    std::atomic<long> next{0};
    constexpr long kChunk = 64;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            auto ws = make_ws();
            for (;;) {
                const long start = next.fetch_add(kChunk, std::memory_order_relaxed);
                if (start >= trials) break;
                const long end = std::min(trials, start + kChunk);
                for (long t = start; t < end; ++t) body(t, ws);
            }
        });
    }
    for (auto& th : pool) th.join();
}

// Mean link gains P * G * pathloss for every (rx, tx) pair and both dipole
// orientations, receiver-major. mean_omni keeps the bare P * pathloss.
struct LinkTable {
    int k = 0;
    std::vector<double> mean_z, mean_y, mean_omni;

    void resize(int pairs) {
        k = pairs;
        const auto n = static_cast<std::size_t>(pairs) * static_cast<std::size_t>(pairs);
        mean_z.resize(n);
        mean_y.resize(n);
        mean_omni.resize(n);
    }
};

void build_link_table(const geometry::Deployment& dep, const channel::RadioConfig& radio,
                      LinkTable& table) {
    const int k = static_cast<int>(dep.tx.size());
    table.resize(k);
    const double lam_over_4pi = radio.wavelength_m() / (4.0 * kPi);
    const double p_beta_num = radio.tx_power_w * lam_over_4pi * lam_over_4pi;
    for (int i = 0; i < k; ++i) {
        const geometry::PolarPoint& rx = dep.rx[static_cast<std::size_t>(i)];
        const double z = dep.rx_height(i);
        const double z2 = z * z;
        for (int j = 0; j < k; ++j) {
            const geometry::PolarPoint& tx = dep.tx[static_cast<std::size_t>(j)];
            const double dphi = std::abs(rx.azimuth_rad - tx.azimuth_rad);
            const double c = std::cos(dphi);
            const double cross = 2.0 * tx.radius_m * rx.radius_m * c;
            const double r2 =
                std::max(tx.radius_m * tx.radius_m + rx.radius_m * rx.radius_m - cross, 0.0);
            const double dist2 = r2 + z2;
            const double p_beta = p_beta_num / dist2;
            const double abs_sin_dphi = std::sqrt(std::max(1.0 - c * c, 0.0));
            double cos_elev;
            double sin_elev;
            if (z > 0.0) {
                const double dist = std::sqrt(dist2);
                cos_elev = z / dist;
                sin_elev = std::sqrt(r2) / dist;
            } else {
                cos_elev = 0.0;
                sin_elev = 1.0;
            }
            const double fz = antenna::field_pattern_from_axis_cosine(cos_elev);
            const double fy = antenna::field_pattern_from_axis_cosine(sin_elev * abs_sin_dphi);
            const std::size_t idx =
                static_cast<std::size_t>(i) * static_cast<std::size_t>(k) + static_cast<std::size_t>(j);
            table.mean_z[idx] = p_beta * fz * fz;
            table.mean_y[idx] = p_beta * fy * fy;
            table.mean_omni[idx] = p_beta;
        }
    }
}

const std::vector<double>& table_for(const LinkTable& t, antenna::AntennaKind kind) {
    switch (kind) {
        case antenna::AntennaKind::DipoleZ: return t.mean_z;
        case antenna::AntennaKind::DipoleY: return t.mean_y;
        case antenna::AntennaKind::Omni: return t.mean_omni;
    }
    return t.mean_omni;
}

void eval_rates(const LinkTable& table, std::span<const antenna::AntennaKind> tx_antenna,
                std::span<const double> fading2, double noise_w, std::vector<double>& rates) {
    const int k = table.k;
    rates.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        double desired = 0.0;
        double total = 0.0;
        const std::size_t row = static_cast<std::size_t>(i) * static_cast<std::size_t>(k);
        for (int j = 0; j < k; ++j) {
            const double mean = table_for(table, tx_antenna[static_cast<std::size_t>(j)])[row + j];
            const double pw = mean * fading2[row + static_cast<std::size_t>(j)];
            total += pw;
            if (i == j) desired = pw;
        }
        const double interference = total - desired;
        rates[static_cast<std::size_t>(i)] = std::log2(1.0 + desired / (interference + noise_w));
    }
}

void draw_fading2(const channel::RadioConfig& radio, std::size_t n, Rng& rng,
                  std::vector<double>& out) {
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = std::norm(channel::sample_fading(radio.fading, radio.rician_k, rng));
    }
}

struct Workspace {
    geometry::Deployment dep;
    LinkTable table;
    std::vector<double> fading2;
    std::vector<antenna::AntennaKind> assignment;
    std::vector<antenna::AntennaKind> assignment_perfect;
    std::vector<double> rates;
};

void assign_perfect(const geometry::Deployment& dep, std::vector<antenna::AntennaKind>& out) {
    const int k = static_cast<int>(dep.tx.size());
    out.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        out[static_cast<std::size_t>(i)] = dep.rx_kind[static_cast<std::size_t>(i)] ==
                                                   geometry::ReceiverKind::Aerial
                                               ? antenna::AntennaKind::DipoleY
                                               : antenna::AntennaKind::DipoleZ;
    }
}

// Preamble-power selection. Each transmitter measures its own receiver's
// preamble once per candidate antenna; the two measurements happen
// back-to-back, so they see one common fading state and the choice reduces to
// the larger mean link gain scaled by that draw.
void assign_measured(const geometry::Deployment& dep, const LinkTable& table,
                     const channel::RadioConfig& radio, Rng& rng,
                     std::vector<antenna::AntennaKind>& out) {
    const int k = static_cast<int>(dep.tx.size());
    out.resize(static_cast<std::size_t>(k));
    constexpr double preamble_power = 1.0; // cancels in the argmax
    for (int i = 0; i < k; ++i) {
        const double f2 = std::norm(channel::sample_fading(radio.fading, radio.rician_k, rng));
        const std::size_t diag = static_cast<std::size_t>(i) * static_cast<std::size_t>(table.k) +
                                 static_cast<std::size_t>(i);
        out[static_cast<std::size_t>(i)] =
            antenna::select_antenna(table.mean_z[diag] * f2 * preamble_power,
                                    table.mean_y[diag] * f2 * preamble_power);
    }
}

void assign_for(Strategy strategy, const geometry::Deployment& dep, const LinkTable& table,
                const channel::RadioConfig& radio, Rng& rng,
                std::vector<antenna::AntennaKind>& out) {
    switch (strategy) {
        case Strategy::AllZ:
            out.assign(dep.tx.size(), antenna::AntennaKind::DipoleZ);
            return;
        case Strategy::CrossDipolePerfect:
            assign_perfect(dep, out);
            return;
        case Strategy::CrossDipoleMeasured:
            assign_measured(dep, table, radio, rng, out);
            return;
    }
}

double metric_value(RateMetric metric, std::span<const double> rates, int aerial) {
    if (metric == RateMetric::NetworkSum) {
        double s = 0.0;
        for (double r : rates) s += r;
        return s;
    }
    double s = 0.0;
    for (int i = 0; i < aerial; ++i) s += rates[static_cast<std::size_t>(i)];
    return s / static_cast<double>(aerial);
}

struct SweepPoint {
    double x;
    geometry::TopologyConfig cfg;
};

RateCurve multipair_core(std::span<const SweepPoint> points, const channel::RadioConfig& radio,
                         Strategy strategy, SweepAxis axis, RateMetric metric, long trials,
                         std::uint64_t seed, int threads, int fixed_aerial) {
    radio.validate();
    if (trials < 1) throw std::invalid_argument("multipair sweep: trials must be >= 1");
    RateCurve curve;
    curve.axis = axis;
    curve.strategy = strategy;
    curve.pairs = points.empty() ? 0 : points.front().cfg.pairs;
    curve.aerial = fixed_aerial;
    curve.trials = trials;
    curve.seed = seed;
    const double noise = radio.noise_power_w();

    std::vector<double> per_trial(static_cast<std::size_t>(trials));
    for (std::size_t p = 0; p < points.size(); ++p) {
        const geometry::TopologyConfig& cfg = points[p].cfg;
        cfg.validate();
        if (metric == RateMetric::AerialMean && cfg.aerial < 1) {
            throw std::invalid_argument("multipair sweep: AerialMean needs at least one aerial receiver");
        }
        run_trials(
            trials, threads, [] { return Workspace{}; },
            [&](long t, Workspace& ws) {
                Rng rng = substream(seed, p, static_cast<std::uint64_t>(t));
                geometry::sample_multipair_into(ws.dep, cfg, rng);
                build_link_table(ws.dep, radio, ws.table);
                assign_for(strategy, ws.dep, ws.table, radio, rng, ws.assignment);
                draw_fading2(radio, ws.table.mean_z.size(), rng, ws.fading2);
                eval_rates(ws.table, ws.assignment, ws.fading2, noise, ws.rates);
                per_trial[static_cast<std::size_t>(t)] = metric_value(metric, ws.rates, cfg.aerial);
            });
        const MeanSe ms = mean_se(per_trial);
        RatePoint pt;
        pt.x = points[p].x;
        pt.mean = ms.mean;
        pt.std_error = ms.se;
        curve.points.push_back(pt);
    }
    return curve;
}

} // namespace

const char* to_string(Strategy s) {
    switch (s) {
        case Strategy::AllZ: return "all-z";
        case Strategy::CrossDipolePerfect: return "cross-dipole-perfect";
        case Strategy::CrossDipoleMeasured: return "cross-dipole-measured";
    }
    return "?";
}

std::vector<double> rates_given_fading(const geometry::Deployment& dep,
                                       std::span<const antenna::AntennaKind> tx_antenna,
                                       const channel::RadioConfig& radio,
                                       std::span<const double> fading2) {
    radio.validate();
    const std::size_t k = dep.tx.size();
    if (dep.rx.size() != k || dep.rx_kind.size() != k) {
        throw std::invalid_argument("rates_given_fading: inconsistent deployment");
    }
    if (tx_antenna.size() != k || fading2.size() != k * k) {
        throw std::invalid_argument("rates_given_fading: needs K antennas and K*K fading entries");
    }
    LinkTable table;
    build_link_table(dep, radio, table);
    std::vector<double> rates;
    eval_rates(table, tx_antenna, fading2, radio.noise_power_w(), rates);
    return rates;
}

std::vector<double> trial_rates(const geometry::Deployment& dep,
                                std::span<const antenna::AntennaKind> tx_antenna,
                                const channel::RadioConfig& radio, Rng& rng) {
    std::vector<double> fading2;
    draw_fading2(radio, dep.tx.size() * dep.tx.size(), rng, fading2);
    return rates_given_fading(dep, tx_antenna, radio, fading2);
}

RateCurve run_standalone_sweep(const geometry::TopologyConfig& cfg,
                               const channel::RadioConfig& radio,
                               antenna::AntennaKind desired_antenna,
                               std::span<const double> heights_m, long trials, std::uint64_t seed,
                               int threads) {
    cfg.validate();
    radio.validate();
    if (desired_antenna == antenna::AntennaKind::Omni) {
        throw std::invalid_argument("run_standalone_sweep: serving antenna must be a dipole");
    }
    if (trials < 1) throw std::invalid_argument("run_standalone_sweep: trials must be >= 1");
    if (cfg.pairs < 2) {
        throw std::invalid_argument("run_standalone_sweep: needs pairs >= 2 for an interference rate");
    }

    RateCurve curve;
    curve.axis = SweepAxis::HeightMeters;
    curve.strategy = desired_antenna == antenna::AntennaKind::DipoleY ? Strategy::CrossDipolePerfect
                                                                      : Strategy::AllZ;
    curve.pairs = cfg.pairs;
    curve.aerial = 1;
    curve.trials = trials;
    curve.seed = seed;

    const int k = cfg.pairs;
    const double noise = radio.noise_power_w();
    const double lam_over_4pi = radio.wavelength_m() / (4.0 * kPi);
    const double p_beta_num = radio.tx_power_w * lam_over_4pi * lam_over_4pi;

    struct StandaloneWs {
        std::vector<double> mean_gain; // serving antenna for tx 0, z dipole otherwise
    };
    std::vector<double> rate(static_cast<std::size_t>(trials));
    std::vector<double> desired(static_cast<std::size_t>(trials));
    std::vector<double> interference(static_cast<std::size_t>(trials));

    for (std::size_t p = 0; p < heights_m.size(); ++p) {
        const double h = heights_m[p];
        if (!(h > 0.0)) throw std::invalid_argument("run_standalone_sweep: heights must be > 0");
        run_trials(
            trials, threads, [] { return StandaloneWs{}; },
            [&](long t, StandaloneWs& ws) {
                Rng rng = substream(seed, p, static_cast<std::uint64_t>(t));
                std::uniform_real_distribution<double> radius(cfg.min_radius_m, cfg.max_radius_m);
                std::uniform_real_distribution<double> azimuth(0.0, 2.0 * kPi);
                ws.mean_gain.resize(static_cast<std::size_t>(k));
                for (int j = 0; j < k; ++j) {
                    const double r = radius(rng);
                    const double phi = azimuth(rng);
                    const double dist2 = r * r + h * h;
                    const double dist = std::sqrt(dist2);
                    const double cos_elev = h / dist;
                    const double p_beta = p_beta_num / dist2;
                    double f;
                    if (j == 0 && desired_antenna == antenna::AntennaKind::DipoleY) {
                        const double u = (r / dist) * std::abs(std::sin(phi));
                        f = antenna::field_pattern_from_axis_cosine(u);
                    } else {
                        f = antenna::field_pattern_from_axis_cosine(cos_elev);
                    }
                    ws.mean_gain[static_cast<std::size_t>(j)] = p_beta * f * f;
                }
                double des = 0.0;
                double intf = 0.0;
                for (int j = 0; j < k; ++j) {
                    const double f2 =
                        std::norm(channel::sample_fading(radio.fading, radio.rician_k, rng));
                    const double pw = ws.mean_gain[static_cast<std::size_t>(j)] * f2;
                    if (j == 0) {
                        des = pw;
                    } else {
                        intf += pw;
                    }
                }
                rate[static_cast<std::size_t>(t)] = std::log2(1.0 + des / (intf + noise));
                desired[static_cast<std::size_t>(t)] = des;
                interference[static_cast<std::size_t>(t)] = intf;
            });
        const MeanSe ms = mean_se(rate);
        RatePoint pt;
        pt.x = h;
        pt.mean = ms.mean;
        pt.std_error = ms.se;
        pt.desired_power_w = mean_of(desired);
        pt.interference_power_w = mean_of(interference);
        curve.points.push_back(pt);
    }
    return curve;
}

RateCurve run_multipair_sweep(const geometry::TopologyConfig& cfg,
                              const channel::RadioConfig& radio, Strategy strategy,
                              std::span<const double> heights_m, RateMetric metric, long trials,
                              std::uint64_t seed, int threads) {
    std::vector<SweepPoint> points;
    points.reserve(heights_m.size());
    for (double h : heights_m) {
        SweepPoint pt{h, cfg};
        pt.cfg.height_m = h;
        points.push_back(pt);
    }
    return multipair_core(points, radio, strategy, SweepAxis::HeightMeters, metric, trials, seed,
                          threads, cfg.aerial);
}

RateCurve run_multipair_percent_sweep(const geometry::TopologyConfig& cfg,
                                      const channel::RadioConfig& radio, Strategy strategy,
                                      std::span<const int> aerial_counts, RateMetric metric,
                                      long trials, std::uint64_t seed, int threads) {
    std::vector<SweepPoint> points;
    points.reserve(aerial_counts.size());
    for (int count : aerial_counts) {
        SweepPoint pt{100.0 * static_cast<double>(count) / static_cast<double>(cfg.pairs), cfg};
        pt.cfg.aerial = count;
        points.push_back(pt);
    }
    return multipair_core(points, radio, strategy, SweepAxis::AerialPercent, metric, trials, seed,
                          threads, -1);
}

RateCurve run_rician_sweep(const geometry::TopologyConfig& cfg, const channel::RadioConfig& radio,
                           Strategy strategy, std::span<const int> aerial_counts, RateMetric metric,
                           long trials, std::uint64_t seed, int threads) {
    if (radio.fading != channel::FadingModel::Rician) {
        throw std::invalid_argument("run_rician_sweep: radio.fading must be Rician");
    }
    return run_multipair_percent_sweep(cfg, radio, strategy, aerial_counts, metric, trials, seed,
                                       threads);
}

std::pair<RateCurve, RateCurve> run_measured_selection(const geometry::TopologyConfig& cfg,
                                                       const channel::RadioConfig& radio,
                                                       std::span<const double> heights_m,
                                                       long trials, std::uint64_t seed,
                                                       int threads) {
    cfg.validate();
    radio.validate();
    if (trials < 1) throw std::invalid_argument("run_measured_selection: trials must be >= 1");

    RateCurve perfect;
    perfect.axis = SweepAxis::HeightMeters;
    perfect.strategy = Strategy::CrossDipolePerfect;
    perfect.pairs = cfg.pairs;
    perfect.aerial = cfg.aerial;
    perfect.trials = trials;
    perfect.seed = seed;
    RateCurve measured = perfect;
    measured.strategy = Strategy::CrossDipoleMeasured;

    const double noise = radio.noise_power_w();
    std::vector<double> sum_perfect(static_cast<std::size_t>(trials));
    std::vector<double> sum_measured(static_cast<std::size_t>(trials));
    std::vector<double> agreement(static_cast<std::size_t>(trials));

    for (std::size_t p = 0; p < heights_m.size(); ++p) {
        geometry::TopologyConfig cfgp = cfg;
        cfgp.height_m = heights_m[p];
        cfgp.validate();
        run_trials(
            trials, threads, [] { return Workspace{}; },
            [&](long t, Workspace& ws) {
                Rng rng = substream(seed, p, static_cast<std::uint64_t>(t));
                geometry::sample_multipair_into(ws.dep, cfgp, rng);
                build_link_table(ws.dep, radio, ws.table);
                assign_measured(ws.dep, ws.table, radio, rng, ws.assignment);
                assign_perfect(ws.dep, ws.assignment_perfect);
                draw_fading2(radio, ws.table.mean_z.size(), rng, ws.fading2);

                eval_rates(ws.table, ws.assignment_perfect, ws.fading2, noise, ws.rates);
                sum_perfect[static_cast<std::size_t>(t)] =
                    metric_value(RateMetric::NetworkSum, ws.rates, cfgp.aerial);
                eval_rates(ws.table, ws.assignment, ws.fading2, noise, ws.rates);
                sum_measured[static_cast<std::size_t>(t)] =
                    metric_value(RateMetric::NetworkSum, ws.rates, cfgp.aerial);

                int agree = 0;
                for (std::size_t i = 0; i < ws.assignment.size(); ++i) {
                    agree += ws.assignment[i] == ws.assignment_perfect[i] ? 1 : 0;
                }
                agreement[static_cast<std::size_t>(t)] =
                    static_cast<double>(agree) / static_cast<double>(ws.assignment.size());
            });
        const MeanSe mp = mean_se(sum_perfect);
        const MeanSe mm = mean_se(sum_measured);
        RatePoint ptp;
        ptp.x = heights_m[p];
        ptp.mean = mp.mean;
        ptp.std_error = mp.se;
        perfect.points.push_back(ptp);
        RatePoint ptm;
        ptm.x = heights_m[p];
        ptm.mean = mm.mean;
        ptm.std_error = mm.se;
        ptm.selection_agreement = mean_of(agreement);
        measured.points.push_back(ptm);
    }
    return {perfect, measured};
}

} // namespace crossdip::simulate
