#include "flatspot/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace flatspot::montecarlo {

namespace detail {

SplitMix64 substream(uint64_t seed, uint64_t index) {
    // one mixing round separates the (seed, index) key from the stream
    SplitMix64 keyer{seed ^ (0x9E3779B97F4A7C15ull * (index + 1))};
    return SplitMix64{keyer.next()};
}

}  // namespace detail

namespace {

constexpr uint64_t kGrid = 1ull << 53;
constexpr double kGridScale = 9007199254740992.0;  // 2^53

// Orbit step on the 2^-53 grid; mirrors dynamics::step(double,double)
// value for value. Sets *flat when x itself lies in the flat spot.
inline uint64_t grid_step(uint64_t mt, uint64_t m, bool* flat) {
    const uint64_t y = m << 1;
    if (y < kGrid) {
        if (y <= mt) {
            *flat = true;
            return mt;
        }
        return y;
    }
    const uint64_t z = y - kGrid;
    if (z >= mt) {
        *flat = true;
        return mt;
    }
    return z;
}

inline double sum_to_value(unsigned __int128 grid_sum, long n) {
    // S_n = grid_sum * 2^-53 - n/2, carried exactly before one rounding
    const __int128 v = static_cast<__int128>(grid_sum) - (static_cast<__int128>(n) << 52);
    return static_cast<double>(v) / (static_cast<double>(n) * kGridScale);
}

}  // namespace

Histogram Histogram::empty(int bins) {
    if (bins < 2) throw std::invalid_argument("Histogram: bins must be >= 2");
    Histogram h;
    h.bins = bins;
    h.counts.assign(static_cast<size_t>(bins), 0);
    return h;
}

void Histogram::add(double value) {
    ++total;
    if (value < -0.5) {
        ++underflow;
        return;
    }
    if (value > 0.5) {
        ++overflow;
        return;
    }
    int i = static_cast<int>((value + 0.5) * bins);
    if (i >= bins) i = bins - 1;  // value == 1/2 joins the top bin
    ++counts[static_cast<size_t>(i)];
}

void Histogram::merge(const Histogram& o) {
    if (bins != o.bins) throw std::invalid_argument("Histogram: bin mismatch");
    total += o.total;
    underflow += o.underflow;
    overflow += o.overflow;
    for (size_t i = 0; i < counts.size(); ++i) counts[i] += o.counts[i];
}

DeviationSample sample_one(uint64_t seed, uint64_t index, long n, long cap) {
    if (n < 1) throw std::invalid_argument("sample_one: n must be >= 1");
    auto rng = detail::substream(seed, index);
    const uint64_t mt = rng.next() >> 11;
    const uint64_t m0 = rng.next() >> 11;

    DeviationSample out{};
    out.t = static_cast<double>(mt) * 0x1.0p-53;
    out.x0 = static_cast<double>(m0) * 0x1.0p-53;
    out.n = n;

    unsigned __int128 sum = 0;
    uint64_t m = m0;
    long done = 0;
    bool entered = false;
    // transient; the flat flag fires at the entry index itself
    while (done < n) {
        sum += m;
        ++done;
        if (done == n) break;
        bool flat = false;
        const uint64_t next = grid_step(mt, m, &flat);
        if (flat && !entered && done - 1 <= cap) {
            entered = true;
            out.entry = done - 1;
            m = next;  // == mt
            break;
        }
        m = next;
    }

    if (done < n) {
        // periodic phase: m == mt here; find the first return of t
        const long remaining = n - done;
        uint64_t orbit_buf[64];
        std::vector<uint64_t> orbit_long;
        const uint64_t* orbit = orbit_buf;
        long period = 0;
        unsigned __int128 block = 0;
        uint64_t y = mt;
        bool found = false;
        const long limit = std::min<long>(remaining, 4096);
        while (period < limit) {
            if (period < 64) {
                orbit_buf[static_cast<size_t>(period)] = y;
            } else {
                if (orbit_long.empty()) orbit_long.assign(orbit_buf, orbit_buf + 64);
                orbit_long.push_back(y);
                orbit = orbit_long.data();
            }
            block += y;
            ++period;
            bool flat = false;
            y = grid_step(mt, y, &flat);
            if (y == mt) {
                found = true;
                break;
            }
        }
        if (found) {
            out.period = period;
            const long k = remaining / period;
            const long j = remaining % period;
            sum += static_cast<unsigned __int128>(k) * block;
            for (long i = 0; i < j; ++i) sum += orbit[static_cast<size_t>(i)];
        } else {
            // no closed form available within the window: finish directly
            uint64_t mm = mt;
            if (period == remaining) {
                sum += block;
            } else {
                for (long i = done; i < n; ++i) {
                    sum += mm;
                    bool flat = false;
                    mm = grid_step(mt, mm, &flat);
                }
            }
        }
    }

    out.value = sum_to_value(sum, n);
    return out;
}

DeviationSample sample_one_direct(uint64_t seed, uint64_t index, long n) {
    if (n < 1) throw std::invalid_argument("sample_one_direct: n must be >= 1");
    auto rng = detail::substream(seed, index);
    const uint64_t mt = rng.next() >> 11;
    const uint64_t m0 = rng.next() >> 11;

    DeviationSample out{};
    out.t = static_cast<double>(mt) * 0x1.0p-53;
    out.x0 = static_cast<double>(m0) * 0x1.0p-53;
    out.n = n;

    unsigned __int128 sum = 0;
    uint64_t m = m0;
    for (long i = 0; i < n; ++i) {
        sum += m;
        bool flat = false;
        m = grid_step(mt, m, &flat);
    }
    out.value = sum_to_value(sum, n);
    return out;
}

Histogram run(const SimulationConfig& config) {
    if (config.samples < 1) throw std::invalid_argument("run: samples must be >= 1");
    int threads = config.threads;
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = static_cast<int>(std::min<long>(threads, config.samples));

    std::vector<Histogram> parts(static_cast<size_t>(threads));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    const long chunk = (config.samples + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        parts[static_cast<size_t>(w)] = Histogram::empty(config.bins);
        pool.emplace_back([&, w] {
            Histogram& h = parts[static_cast<size_t>(w)];
            const long lo = static_cast<long>(w) * chunk;
            const long hi = std::min(config.samples, lo + chunk);
            for (long i = lo; i < hi; ++i)
                h.add(sample_one(config.seed, static_cast<uint64_t>(i), config.iters,
                                 config.entry_cap)
                          .value);
        });
    }
    for (auto& th : pool) th.join();
    Histogram out = Histogram::empty(config.bins);
    for (const Histogram& h : parts) out.merge(h);
    return out;
}

Comparison compare(const Histogram& h, const density::StepFunction& nu) {
    if (h.total <= 0) throw std::invalid_argument("compare: empty histogram");
    Comparison c;
    const double m = static_cast<double>(h.total);
    Rational prev = nu.cdf(h.edge(0));
    uint64_t cum_counts = h.underflow;
    const double cdf_offset = nu.cdf(h.edge(0)).to_double();  // mass left of -1/2 (none)
    for (int i = 0; i < h.bins; ++i) {
        const Rational cur = nu.cdf(h.edge(i + 1));
        const double exact_mass = (cur - prev).to_double();
        const double emp_mass = static_cast<double>(h.counts[static_cast<size_t>(i)]) / m;
        c.l1 += std::fabs(emp_mass - exact_mass);
        const double ks_here =
            std::fabs(static_cast<double>(cum_counts) / m - (prev.to_double() - cdf_offset));
        c.ks = std::max(c.ks, ks_here);
        cum_counts += h.counts[static_cast<size_t>(i)];
        prev = cur;
    }
    c.ks = std::max(c.ks,
                    std::fabs(static_cast<double>(cum_counts) / m -
                              (prev.to_double() - cdf_offset)));
    return c;
}

Histogram sample_from_density(const density::StepFunction& nu, long samples, int bins,
                              uint64_t seed, bool stratified) {
    if (nu.empty()) throw std::invalid_argument("sample_from_density: empty density");
    const auto& bp = nu.breakpoints();
    const auto& vals = nu.values();
    // double-precision cumulative masses per plateau
    std::vector<double> cum(vals.size() + 1, 0.0);
    std::vector<double> bpd(bp.size());
    std::vector<double> vd(vals.size());
    for (size_t i = 0; i < bp.size(); ++i) bpd[i] = bp[i].to_double();
    Rational acc;
    for (size_t i = 0; i < vals.size(); ++i) {
        vd[i] = vals[i].to_double();
        acc += vals[i] * (bp[i + 1] - bp[i]);
        cum[i + 1] = acc.to_double();
    }
    const double total = cum.back();

    Histogram h = Histogram::empty(bins);
    auto rng = detail::substream(seed, 0);
    for (long i = 0; i < samples; ++i) {
        double u;
        if (stratified)
            u = (static_cast<double>(i) + 0.5) / static_cast<double>(samples);
        else
            u = rng.next_unit();
        u *= total;
        const auto it = std::upper_bound(cum.begin(), cum.end(), u);
        size_t j = it == cum.begin() ? 0 : static_cast<size_t>(it - cum.begin()) - 1;
        while (j < vd.size() && vd[j] <= 0.0) ++j;  // skip zero plateaus
        if (j >= vd.size()) j = vd.size() - 1;
        const double x = bpd[j] + (u - cum[j]) / vd[j];
        h.add(x);
    }
    return h;
}

void write_csv(const Histogram& h, const density::StepFunction& nu, std::ostream& os) {
    os << "bin_left,bin_right,count,empirical_density,exact_density\n";
    const double m = static_cast<double>(h.total);
    for (int i = 0; i < h.bins; ++i) {
        const Rational l = h.edge(i), r = h.edge(i + 1);
        const double width = (r - l).to_double();
        const double emp = static_cast<double>(h.counts[static_cast<size_t>(i)]) / (m * width);
        const double exact = ((nu.cdf(r) - nu.cdf(l)) / (r - l)).to_double();
        os << l.str() << ',' << r.str() << ',' << h.counts[static_cast<size_t>(i)] << ','
           << format_double(emp) << ',' << format_double(exact) << '\n';
    }
}

void write_json(const Histogram& h, const density::StepFunction& nu, std::ostream& os) {
    nlohmann::json rows = nlohmann::json::array();
    const double m = static_cast<double>(h.total);
    for (int i = 0; i < h.bins; ++i) {
        const Rational l = h.edge(i), r = h.edge(i + 1);
        const double width = (r - l).to_double();
        rows.push_back(
            {{"bin_left", l.str()},
             {"bin_right", r.str()},
             {"count", h.counts[static_cast<size_t>(i)]},
             {"empirical_density",
              static_cast<double>(h.counts[static_cast<size_t>(i)]) / (m * width)},
             {"exact_density", ((nu.cdf(r) - nu.cdf(l)) / (r - l)).to_double()}});
    }
    os << rows.dump(2) << '\n';
}

void write_report_json(const Comparison& c, const SimulationConfig& cfg, std::ostream& os) {
    nlohmann::json j{{"L1", c.l1},       {"KS", c.ks},   {"M", cfg.samples},
                     {"n", cfg.iters},   {"B", cfg.bins}, {"seed", cfg.seed}};
    os << j.dump(2) << '\n';
}

}  // namespace flatspot::montecarlo
