#ifndef HGM_SEARCH_HPP
#define HGM_SEARCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hgm/certificate.hpp"

namespace hgm {

/// Bounds for the unipotent search. The search is deterministic for a fixed
/// config: words expand in the order a, a^-1, b, b^-1 and every later stage
/// walks its pools in creation order.
struct SearchConfig {
    int maxWordLength = 12;
    unsigned long maxEntryBits = 256;  // prune elements with larger numerators/denominators
    int commutatorRounds = 2;
    std::vector<RootGroupPattern> targets;  // empty: highest and second-highest root groups
    SLP seeds;  // optional extra pool elements, defined over the base symbols a, b
};

struct SearchStats {
    std::uint64_t nodesExpanded = 0;
    std::uint64_t pruned = 0;
    std::uint64_t candidates = 0;
    std::uint64_t commutatorsTried = 0;
    std::uint64_t combinationsTried = 0;
    double wallSeconds = 0;
};

struct FoundWitness {
    std::string name;  // definition holding the witness
    RootLabel root;
    SLP slp;  // self-contained program over the base symbols a, b
};

struct SearchResult {
    std::vector<FoundWitness> found;  // first witness per target, discovery order
    bool allTargetsFound = false;
    SearchStats stats;
};

/// Enumerates reduced words in the conjugated generators a = P^-1 A P,
/// b = P^-1 B P up to the length bound, collects unipotent elements, then
/// refines the pool by commutator rounds and integer power/product
/// combinations until the target root-group patterns are witnessed or the
/// bounds are exhausted. Every returned witness re-verifies through the
/// certificate pipeline.
SearchResult searchRootUnipotents(const GroupPresentation& pres, const QMatrix& P,
                                  const SearchConfig& cfg);

struct PatternCandidate {
    QMatrix m;
    SLP slp;  // last definition evaluates to m
};

/// Combines unipotent candidates by integer powers, products, conjugations and
/// commutators, hunting for elements supported on the pattern. Returns a
/// self-contained program per witness found (possibly none).
std::vector<SLP> reduceToPattern(const std::vector<PatternCandidate>& candidates,
                                 const RootGroupPattern& pattern, const InvariantForm& standard);

/// Certificate claiming every witness found, with a = P^-1 A P and
/// b = P^-1 B P spelled out as leading definitions.
Certificate certificateFromSearch(const ParameterPair& params, const QMatrix& P,
                                  const std::vector<FoundWitness>& witnesses,
                                  const SearchConfig& cfg);

} // namespace hgm

#endif
