#include "mhwalk/batch.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>

#include "batch_impl.hpp"

namespace mhwalk {

namespace {

using detail::ChainTables;
using detail::HitTask;

// The AVX2 stepper addresses nodes and adjacency slots with signed 32-bit
// gather indices.
bool fits_avx2(const Graph& g) {
    return g.node_count() < (1u << 31) && 2 * g.edge_count() < (1ull << 31);
}

Backend env_backend() {
    const char* v = std::getenv("MHWALK_BACKEND");
    if (v == nullptr || *v == '\0') {
        return Backend::Auto;
    }
    const std::string s(v);
    if (s == "scalar") {
        return Backend::Scalar;
    }
    if (s == "avx2") {
        return Backend::Avx2;
    }
    if (s == "auto") {
        return Backend::Auto;
    }
    throw std::invalid_argument("MHWALK_BACKEND must be scalar, avx2, or auto (got '" + s +
                                "')");
}

// Contiguous trial chunks across `jobs` threads; chunk boundaries do not
// affect results (per-trial streams), only wall-clock time.
void run_chunks(uint64_t total, unsigned jobs,
                const std::function<void(uint64_t, uint64_t)>& fn) {
    if (total == 0) {
        return;
    }
    if (jobs <= 1 || total == 1) {
        fn(0, total);
        return;
    }
    const uint64_t nchunk = std::min<uint64_t>(jobs, total);
    const uint64_t base = total / nchunk;
    const uint64_t rem = total % nchunk;
    std::vector<std::thread> threads;
    threads.reserve(static_cast<size_t>(nchunk));
    uint64_t begin = 0;
    for (uint64_t c = 0; c < nchunk; ++c) {
        const uint64_t count = base + (c < rem ? 1 : 0);
        threads.emplace_back(fn, begin, count);
        begin += count;
    }
    for (auto& t : threads) {
        t.join();
    }
}

}  // namespace

bool avx2_available() {
#if defined(MHWALK_BUILD_AVX2) && (defined(__x86_64__) || defined(__i386__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Backend resolve_backend(Backend want, const Graph& g) {
    if (want == Backend::Auto) {
        const Backend env = env_backend();
        if (env != Backend::Auto) {
            return resolve_backend(env, g);
        }
        return (avx2_available() && fits_avx2(g)) ? Backend::Avx2 : Backend::Scalar;
    }
    if (want == Backend::Avx2) {
        if (!avx2_available()) {
            throw std::invalid_argument("AVX2 backend is not available on this host/build");
        }
        if (!fits_avx2(g)) {
            throw std::invalid_argument("graph too large for the AVX2 stepper's 32-bit indexing");
        }
    }
    return want;
}

std::vector<HitSample> batch_hitting_times(const Graph& g, const Potential& f, NodeId start,
                                           NodeId target, uint64_t trials, uint64_t step_cap,
                                           uint64_t seed, Backend backend, unsigned jobs) {
    g.degree(start);  // id validation
    g.degree(target);
    if (step_cap == 0) {
        throw std::invalid_argument("step cap must be positive");
    }
    const Backend use = resolve_backend(backend, g);
    std::vector<HitSample> out(trials);
    if (trials == 0) {
        return out;
    }
    if (g.degree(start) == 0) {
        // Absorbed immediately: occupies start at every time >= 1.
        const HitSample s = (start == target) ? HitSample{1, true} : HitSample{step_cap, false};
        std::fill(out.begin(), out.end(), s);
        return out;
    }
    const ChainTables tables = ChainTables::build(g, f);
    const HitTask task{start, target, step_cap};
    run_chunks(trials, jobs, [&](uint64_t t0, uint64_t count) {
        if (use == Backend::Avx2) {
            detail::avx2::drive_hits_avx2(tables, task, seed, t0, count, out.data() + t0);
        } else {
            detail::drive_hits<detail::ScalarStepper>(tables, task, seed, t0, count,
                                                      out.data() + t0);
        }
    });
    return out;
}

std::vector<HitSample> batch_cover_times(const Graph& g, const Potential& f, NodeId start,
                                         uint64_t trials, uint64_t step_cap, uint64_t seed,
                                         Backend backend, unsigned jobs) {
    g.degree(start);  // id validation
    if (step_cap == 0) {
        throw std::invalid_argument("step cap must be positive");
    }
    const Backend use = resolve_backend(backend, g);
    std::vector<HitSample> out(trials);
    if (trials == 0) {
        return out;
    }
    const uint64_t comp_size = component_of(g, start).size();
    if (comp_size == 1) {
        std::fill(out.begin(), out.end(), HitSample{0, true});
        return out;
    }
    const ChainTables tables = ChainTables::build(g, f);
    run_chunks(trials, jobs, [&](uint64_t t0, uint64_t count) {
        if (use == Backend::Avx2) {
            detail::avx2::drive_cover_avx2(tables, start, g.node_count(), comp_size, step_cap,
                                           seed, t0, count, out.data() + t0);
        } else {
            detail::drive_cover<detail::ScalarStepper>(tables, start, g.node_count(), comp_size,
                                                       step_cap, seed, t0, count,
                                                       out.data() + t0);
        }
    });
    return out;
}

std::vector<uint64_t> batch_return_counts(const Graph& g, const Potential& f, NodeId i,
                                          uint64_t t, uint64_t trials, uint64_t seed,
                                          Backend backend, unsigned jobs) {
    g.degree(i);  // id validation
    if (t == 0) {
        throw std::invalid_argument("return-count horizon must be positive");
    }
    const Backend use = resolve_backend(backend, g);
    std::vector<uint64_t> out(trials);
    if (trials == 0) {
        return out;
    }
    if (t == 1 || g.degree(i) == 0) {
        // Time 0 only, or an absorbed chain that occupies i forever.
        std::fill(out.begin(), out.end(), g.degree(i) == 0 ? t : 1);
        return out;
    }
    const ChainTables tables = ChainTables::build(g, f);
    const uint64_t nsteps = t - 1;
    run_chunks(trials, jobs, [&](uint64_t t0, uint64_t count) {
        if (use == Backend::Avx2) {
            detail::avx2::drive_returns_avx2(tables, i, nsteps, seed, t0, count,
                                             out.data() + t0);
        } else {
            detail::drive_returns<detail::ScalarStepper>(tables, i, nsteps, seed, t0, count,
                                                         out.data() + t0);
        }
    });
    return out;
}

#ifndef MHWALK_BUILD_AVX2
namespace detail::avx2 {
void drive_hits_avx2(const ChainTables&, const HitTask&, uint64_t, uint64_t, uint64_t,
                     HitSample*) {
    throw std::logic_error("AVX2 backend not built");
}
void drive_cover_avx2(const ChainTables&, NodeId, uint32_t, uint64_t, uint64_t, uint64_t,
                      uint64_t, uint64_t, HitSample*) {
    throw std::logic_error("AVX2 backend not built");
}
void drive_returns_avx2(const ChainTables&, NodeId, uint64_t, uint64_t, uint64_t, uint64_t,
                        uint64_t*) {
    throw std::logic_error("AVX2 backend not built");
}
}  // namespace detail::avx2
#endif

}  // namespace mhwalk
