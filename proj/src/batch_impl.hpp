#pragma once

// Internals shared by the batch-driver backends.  The semantics reference
// for every backend is chain_step below: the SIMD stepper must produce the
// same node sequence for the same rng stream, bit for bit (its rare
// bounded-draw rejection path literally replays chain_step).

#include <algorithm>
#include <cstdint>
#include <vector>

#include "mhwalk/batch.hpp"
#include "mhwalk/graph.hpp"
#include "mhwalk/potential.hpp"
#include "mhwalk/rng.hpp"

namespace mhwalk::detail {

// Per-node lookup tables: the walk kernel as flat arrays.
struct ChainTables {
    const uint32_t* offsets = nullptr;
    const uint32_t* adj = nullptr;
    std::vector<uint32_t> deg;
    std::vector<double> deg_d;
    std::vector<double> fval;
    std::vector<uint64_t> packed_od;  // (offset << 32) | degree, one gather per proposal

    static ChainTables build(const Graph& g, const Potential& f) {
        ChainTables t;
        const uint32_t n = g.node_count();
        t.offsets = g.raw_offsets();
        t.adj = g.raw_adjacency();
        t.deg.resize(n);
        t.deg_d.resize(n);
        t.fval.resize(n);
        t.packed_od.resize(n);
        for (uint32_t v = 0; v < n; ++v) {
            t.deg[v] = g.degree(v);
            t.deg_d[v] = static_cast<double>(t.deg[v]);
            t.fval[v] = f.value(g, v);
            t.packed_od[v] = (static_cast<uint64_t>(t.offsets[v]) << 32) | t.deg[v];
        }
        return t;
    }
};

// One walk step from a non-isolated node; identical draw discipline and
// float expressions as next_state in walk.hpp.
inline NodeId chain_step(const ChainTables& t, NodeId v, Rng& rng) {
    const uint32_t dv = t.deg[v];
    const uint32_t port = rng.uniform_below(dv);
    const NodeId u = t.adj[t.offsets[v] + port];
    const double r = rng.next_unit();
    const double q = (t.deg_d[v] * t.fval[u]) / (t.deg_d[u] * t.fval[v]);
    return r < q ? u : v;
}

class ScalarStepper {
  public:
    static constexpr unsigned kWidth = 1;

    explicit ScalarStepper(const ChainTables& t) : t_(t), rng_(0) {}

    void load(unsigned /*lane*/, NodeId node, const Rng& rng) {
        node_ = node;
        rng_ = rng;
    }
    NodeId node(unsigned /*lane*/) const { return node_; }
    void step() { node_ = chain_step(t_, node_, rng_); }

  private:
    const ChainTables& t_;
    NodeId node_ = 0;
    Rng rng_;
};

struct HitTask {
    NodeId start = 0;
    NodeId target = 0;
    uint64_t cap = 0;
};

// Lane-refilling trial loop shared by all backends.  Each trial k (relative
// to trial0) runs on stream (seed, trial0+k); finished lanes are reloaded
// with the next pending trial.  Idle lanes are parked on a copy of the first
// trial's state so every lane always holds a valid chain.
template <class Stepper>
void drive_hits(const ChainTables& t, const HitTask& task, uint64_t seed, uint64_t trial0,
                uint64_t trials, HitSample* out) {
    Stepper st(t);
    constexpr unsigned w = Stepper::kWidth;
    uint64_t steps[w];
    uint64_t trial[w];
    bool live[w];
    uint64_t next = 0;
    unsigned nlive = 0;
    for (unsigned l = 0; l < w; ++l) {
        if (next < trials) {
            st.load(l, task.start, Rng::stream(seed, trial0 + next));
            steps[l] = 0;
            trial[l] = next++;
            live[l] = true;
            ++nlive;
        } else {
            st.load(l, task.start, Rng::stream(seed, trial0));
            live[l] = false;
        }
    }
    while (nlive > 0) {
        st.step();
        for (unsigned l = 0; l < w; ++l) {
            if (!live[l]) {
                continue;
            }
            ++steps[l];
            const bool hit = st.node(l) == task.target;
            if (hit || steps[l] == task.cap) {
                out[trial[l]] = HitSample{hit ? steps[l] : task.cap, hit};
                if (next < trials) {
                    st.load(l, task.start, Rng::stream(seed, trial0 + next));
                    steps[l] = 0;
                    trial[l] = next++;
                } else {
                    live[l] = false;
                    --nlive;
                }
            }
        }
    }
}

template <class Stepper>
void drive_cover(const ChainTables& t, NodeId start, uint32_t n, uint64_t comp_size,
                 uint64_t cap, uint64_t seed, uint64_t trial0, uint64_t trials,
                 HitSample* out) {
    Stepper st(t);
    constexpr unsigned w = Stepper::kWidth;
    const size_t words = (static_cast<size_t>(n) + 63) / 64;
    std::vector<uint64_t> seen(words * w, 0);
    uint64_t steps[w];
    uint64_t trial[w];
    uint64_t remaining[w];
    bool live[w];
    uint64_t next = 0;
    unsigned nlive = 0;
    auto reset_lane = [&](unsigned l) {
        std::fill(seen.begin() + l * words, seen.begin() + (l + 1) * words, 0);
        seen[l * words + start / 64] = 1ULL << (start % 64);
        steps[l] = 0;
        remaining[l] = comp_size - 1;
    };
    for (unsigned l = 0; l < w; ++l) {
        if (next < trials) {
            st.load(l, start, Rng::stream(seed, trial0 + next));
            reset_lane(l);
            trial[l] = next++;
            live[l] = true;
            ++nlive;
        } else {
            st.load(l, start, Rng::stream(seed, trial0));
            live[l] = false;
        }
    }
    while (nlive > 0) {
        st.step();
        for (unsigned l = 0; l < w; ++l) {
            if (!live[l]) {
                continue;
            }
            ++steps[l];
            const NodeId v = st.node(l);
            uint64_t& word = seen[l * words + v / 64];
            const uint64_t bit = 1ULL << (v % 64);
            bool done = false;
            bool covered = false;
            if (!(word & bit)) {
                word |= bit;
                if (--remaining[l] == 0) {
                    done = covered = true;
                }
            }
            if (!done && steps[l] == cap) {
                done = true;
            }
            if (done) {
                out[trial[l]] = HitSample{covered ? steps[l] : cap, covered};
                if (next < trials) {
                    st.load(l, start, Rng::stream(seed, trial0 + next));
                    reset_lane(l);
                    trial[l] = next++;
                } else {
                    live[l] = false;
                    --nlive;
                }
            }
        }
    }
}

template <class Stepper>
void drive_returns(const ChainTables& t, NodeId home, uint64_t nsteps, uint64_t seed,
                   uint64_t trial0, uint64_t trials, uint64_t* out) {
    Stepper st(t);
    constexpr unsigned w = Stepper::kWidth;
    uint64_t steps[w];
    uint64_t trial[w];
    uint64_t count[w];
    bool live[w];
    uint64_t next = 0;
    unsigned nlive = 0;
    for (unsigned l = 0; l < w; ++l) {
        if (next < trials) {
            st.load(l, home, Rng::stream(seed, trial0 + next));
            steps[l] = 0;
            count[l] = 1;  // occupancy at time 0
            trial[l] = next++;
            live[l] = true;
            ++nlive;
        } else {
            st.load(l, home, Rng::stream(seed, trial0));
            live[l] = false;
        }
    }
    while (nlive > 0) {
        st.step();
        for (unsigned l = 0; l < w; ++l) {
            if (!live[l]) {
                continue;
            }
            ++steps[l];
            count[l] += st.node(l) == home;
            if (steps[l] == nsteps) {
                out[trial[l]] = count[l];
                if (next < trials) {
                    st.load(l, home, Rng::stream(seed, trial0 + next));
                    steps[l] = 0;
                    count[l] = 1;
                    trial[l] = next++;
                } else {
                    live[l] = false;
                    --nlive;
                }
            }
        }
    }
}

// AVX2 entry points (defined in the AVX2 translation unit, stubbed out when
// not built).
namespace avx2 {
void drive_hits_avx2(const ChainTables& t, const HitTask& task, uint64_t seed, uint64_t trial0,
                     uint64_t trials, HitSample* out);
void drive_cover_avx2(const ChainTables& t, NodeId start, uint32_t n, uint64_t comp_size,
                      uint64_t cap, uint64_t seed, uint64_t trial0, uint64_t trials,
                      HitSample* out);
void drive_returns_avx2(const ChainTables& t, NodeId home, uint64_t nsteps, uint64_t seed,
                        uint64_t trial0, uint64_t trials, uint64_t* out);
}  // namespace avx2

}  // namespace mhwalk::detail
