#ifndef BIGDEG_PREFIX_HPP
#define BIGDEG_PREFIX_HPP

#include <cstdint>
#include <set>
#include <vector>

#include "bigdeg/onetype.hpp"
#include "bigdeg/structures.hpp"

namespace bigdeg {

/// The first N vertices of a deterministically built enumeration whose
/// initial segments all lie in the class.
struct EnumeratedPrefix {
    ClassSpec spec;
    FinStructure structure;  // on {v_0 .. v_{N-1}}

    /// One row per vertex: which scheduled 1-type it realizes and the
    /// bookkeeping needed to test schedule fairness.
    struct ScheduleEntry {
        int stage = 0;                 // the K_m the scheduled type lives over
        CodeSeq scheduled;             // 1-type over K_stage
        CodeSeq realized;              // its minimal extension, the type of v_n over K_n
        int enqueued_at = 0;           // step at which the entry was enqueued
        int queue_len_at_enqueue = 0;  // Q at that moment
    };
    std::vector<ScheduleEntry> log;

    int size() const { return structure.size; }
};

/// Round-robin FIFO construction: a queue of (stage, 1-type) entries is
/// consumed in order; v_n realizes the head entry extended canonically
/// least to a 1-type over K_n, and the head's one-step extensions are
/// enqueued.
EnumeratedPrefix build_prefix(const ClassSpec& spec, int n);

/// Wraps a hand-supplied enumeration (used for the reference figures and
/// enumeration-invariance checks). Every initial segment must be a class
/// member.
EnumeratedPrefix prefix_from_structure(const ClassSpec& spec, const FinStructure& s);

enum class PairColor { blue = 0, red = 1 };

/// Total coloring of index pairs i < j.
struct PairColoring {
    int domain_size = 0;
    std::vector<int> colors;  // indexed by pair rank of (i, j), i < j
    int color_count = 2;

    int at(int i, int j) const;
    void set(int i, int j, int color);
    static PairColoring constant(int n, int color, int color_count = 2);
};

/// blue iff v_i precedes v_j in the order; the coloring that defeats a
/// full Ramsey analogue for the rationals.
PairColor sierpinski_color(const EnumeratedPrefix& prefix, int i, int j);
PairColoring sierpinski_coloring(const EnumeratedPrefix& prefix);

struct PersistenceTrial {
    std::uint64_t seed = 0;
    std::vector<int> subcopy;  // chosen indices
    std::set<int> colors_seen;
};

struct PersistenceReport {
    std::uint64_t master_seed = 0;
    int subcopy_size = 0;
    std::vector<PersistenceTrial> trials;
    bool every_trial_saw(int color) const;
};

PersistenceReport persistence_sample(const EnumeratedPrefix& prefix,
                                     const PairColoring& coloring,
                                     int subcopy_size, int trials,
                                     std::uint64_t seed);

}  // namespace bigdeg

#endif
