// AVX2 variant of the batch walk stepper: four chains per vector register.
//
// Bit-equivalence with the scalar reference is a hard contract, kept by
// construction: identical xoshiro updates per lane, the identical
// (x >> 12) * 2^-52 unit-interval mapping (via the 2^52 magic-number trick),
// identical IEEE double expressions for the acceptance ratio, and — for the
// rare draws where the bounded-sampling rejection test could fire — a lane
// replay through the scalar chain_step from a pre-step snapshot, consuming
// exactly the draws the scalar path would.

#ifdef MHWALK_BUILD_AVX2

#include <immintrin.h>

#include "batch_impl.hpp"

namespace mhwalk::detail {

namespace {

inline __m256i rotl64(__m256i x, int k) {
    return _mm256_or_si256(_mm256_slli_epi64(x, k), _mm256_srli_epi64(x, 64 - k));
}

// Low 32 bits of each 64-bit lane, packed into a 128-bit vector.
inline __m128i pack_low32(__m256i x) {
    const __m256i idx = _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0);
    return _mm256_castsi256_si128(_mm256_permutevar8x32_epi32(x, idx));
}

// Exact (double)y * 2^-52 for 0 <= y < 2^52 in every lane.
inline __m256d u52_to_unit(__m256i y) {
    const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);  // 2^52
    const __m256d wide =
        _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(y, magic)), _mm256_castsi256_pd(magic));
    return _mm256_mul_pd(wide, _mm256_set1_pd(0x1.0p-52));
}

class Avx2Stepper {
  public:
    static constexpr unsigned kWidth = 4;

    explicit Avx2Stepper(const ChainTables& t) : t_(t) {
        s0_ = s1_ = s2_ = s3_ = _mm256_setzero_si256();
        cur_ = curdeg_ = curoff_ = _mm256_setzero_si256();
        curdegd_ = curf_ = _mm256_setzero_pd();
        nodes_[0] = nodes_[1] = nodes_[2] = nodes_[3] = 0;
    }

    void load(unsigned lane, NodeId node, const Rng& rng) {
        const uint64_t* st = rng.state();
        set_lane64(s0_, lane, st[0]);
        set_lane64(s1_, lane, st[1]);
        set_lane64(s2_, lane, st[2]);
        set_lane64(s3_, lane, st[3]);
        set_chain_lane(lane, node);
    }

    NodeId node(unsigned lane) const { return static_cast<NodeId>(nodes_[lane]); }

    void step() {
        // Pre-step snapshot for the rejection-path replay.
        const __m256i p0 = s0_, p1 = s1_, p2 = s2_, p3 = s3_;
        alignas(32) uint64_t prev_nodes[4];
        _mm256_store_si256(reinterpret_cast<__m256i*>(prev_nodes), cur_);

        const __m256i mask32 = _mm256_set1_epi64x(0xFFFFFFFFLL);

        // Proposal draw: top 32 bits, multiply-shift onto [0, deg).
        const __m256i draw1 = next_vec();
        const __m256i x32 = _mm256_srli_epi64(draw1, 32);
        const __m256i prod = _mm256_mul_epu32(x32, curdeg_);
        const __m256i lo = _mm256_and_si256(prod, mask32);
        const __m256i port = _mm256_srli_epi64(prod, 32);
        // Conservative superset of the scalar rejection test (lo < threshold
        // implies lo < deg); flagged lanes are replayed exactly below.
        const int slow = _mm256_movemask_pd(
            _mm256_castsi256_pd(_mm256_cmpgt_epi64(curdeg_, lo)));

        // Acceptance draw, always consumed.
        const __m256i draw2 = next_vec();
        const __m256d r = u52_to_unit(_mm256_srli_epi64(draw2, 12));

        // Proposed neighbor and its tables (in-range even for flagged lanes:
        // port < deg always holds for the multiply-shift candidate).
        const __m128i addr = pack_low32(_mm256_add_epi64(curoff_, port));
        const __m128i u32 =
            _mm_i32gather_epi32(reinterpret_cast<const int*>(t_.adj), addr, 4);
        const __m256i od = _mm256_i32gather_epi64(
            reinterpret_cast<const long long*>(t_.packed_od.data()), u32, 8);
        const __m256i udeg = _mm256_and_si256(od, mask32);
        const __m256i uoff = _mm256_srli_epi64(od, 32);
        const __m256d udegd = _mm256_cvtepi32_pd(pack_low32(udeg));
        const __m256d uf = _mm256_i32gather_pd(t_.fval.data(), u32, 8);

        const __m256d q =
            _mm256_div_pd(_mm256_mul_pd(curdegd_, uf), _mm256_mul_pd(udegd, curf_));
        const __m256d acc = _mm256_cmp_pd(r, q, _CMP_LT_OQ);
        const __m256i acci = _mm256_castpd_si256(acc);

        cur_ = _mm256_blendv_epi8(cur_, _mm256_cvtepu32_epi64(u32), acci);
        curdeg_ = _mm256_blendv_epi8(curdeg_, udeg, acci);
        curoff_ = _mm256_blendv_epi8(curoff_, uoff, acci);
        curdegd_ = _mm256_blendv_pd(curdegd_, udegd, acc);
        curf_ = _mm256_blendv_pd(curf_, uf, acc);

        if (slow != 0) {
            replay_lanes(slow, p0, p1, p2, p3, prev_nodes);
        }
        _mm256_store_si256(reinterpret_cast<__m256i*>(nodes_), cur_);
    }

  private:
    // xoshiro256++ across all four lanes at once.
    __m256i next_vec() {
        const __m256i result = _mm256_add_epi64(rotl64(_mm256_add_epi64(s0_, s3_), 23), s0_);
        const __m256i t = _mm256_slli_epi64(s1_, 17);
        s2_ = _mm256_xor_si256(s2_, s0_);
        s3_ = _mm256_xor_si256(s3_, s1_);
        s1_ = _mm256_xor_si256(s1_, s2_);
        s0_ = _mm256_xor_si256(s0_, s3_);
        s2_ = _mm256_xor_si256(s2_, t);
        s3_ = rotl64(s3_, 45);
        return result;
    }

    static void set_lane64(__m256i& v, unsigned lane, uint64_t x) {
        alignas(32) uint64_t a[4];
        _mm256_store_si256(reinterpret_cast<__m256i*>(a), v);
        a[lane] = x;
        v = _mm256_load_si256(reinterpret_cast<const __m256i*>(a));
    }

    static void set_laned(__m256d& v, unsigned lane, double x) {
        alignas(32) double a[4];
        _mm256_store_pd(a, v);
        a[lane] = x;
        v = _mm256_load_pd(a);
    }

    void set_chain_lane(unsigned lane, NodeId node) {
        set_lane64(cur_, lane, node);
        set_lane64(curdeg_, lane, t_.deg[node]);
        set_lane64(curoff_, lane, t_.offsets[node]);
        set_laned(curdegd_, lane, t_.deg_d[node]);
        set_laned(curf_, lane, t_.fval[node]);
        nodes_[lane] = node;
    }

    // Replays flagged lanes through the canonical scalar step from the
    // pre-step rng/node snapshot, overwriting whatever the vector path wrote.
    void replay_lanes(int mask, __m256i p0, __m256i p1, __m256i p2, __m256i p3,
                      const uint64_t* prev_nodes) {
        alignas(32) uint64_t a0[4], a1[4], a2[4], a3[4];
        _mm256_store_si256(reinterpret_cast<__m256i*>(a0), p0);
        _mm256_store_si256(reinterpret_cast<__m256i*>(a1), p1);
        _mm256_store_si256(reinterpret_cast<__m256i*>(a2), p2);
        _mm256_store_si256(reinterpret_cast<__m256i*>(a3), p3);
        for (unsigned lane = 0; lane < 4; ++lane) {
            if ((mask & (1 << lane)) == 0) {
                continue;
            }
            Rng rng(0);
            const uint64_t st[4] = {a0[lane], a1[lane], a2[lane], a3[lane]};
            rng.set_state(st);
            const NodeId stepped =
                chain_step(t_, static_cast<NodeId>(prev_nodes[lane]), rng);
            const uint64_t* ns = rng.state();
            set_lane64(s0_, lane, ns[0]);
            set_lane64(s1_, lane, ns[1]);
            set_lane64(s2_, lane, ns[2]);
            set_lane64(s3_, lane, ns[3]);
            set_chain_lane(lane, stepped);
        }
    }

    const ChainTables& t_;
    __m256i s0_, s1_, s2_, s3_;
    __m256i cur_, curdeg_, curoff_;
    __m256d curdegd_, curf_;
    alignas(32) uint64_t nodes_[4];
};

}  // namespace

namespace avx2 {

void drive_hits_avx2(const ChainTables& t, const HitTask& task, uint64_t seed, uint64_t trial0,
                     uint64_t trials, HitSample* out) {
    drive_hits<Avx2Stepper>(t, task, seed, trial0, trials, out);
}

void drive_cover_avx2(const ChainTables& t, NodeId start, uint32_t n, uint64_t comp_size,
                      uint64_t cap, uint64_t seed, uint64_t trial0, uint64_t trials,
                      HitSample* out) {
    drive_cover<Avx2Stepper>(t, start, n, comp_size, cap, seed, trial0, trials, out);
}

void drive_returns_avx2(const ChainTables& t, NodeId home, uint64_t nsteps, uint64_t seed,
                        uint64_t trial0, uint64_t trials, uint64_t* out) {
    drive_returns<Avx2Stepper>(t, home, nsteps, seed, trial0, trials, out);
}

}  // namespace avx2

}  // namespace mhwalk::detail

#endif  // MHWALK_BUILD_AVX2
