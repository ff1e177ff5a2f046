#include "hgm/search.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <unordered_map>

namespace hgm {

namespace {

// Pool caps keeping the refinement stages polynomial; all pools are walked in
// a deterministic order, so the caps never introduce nondeterminism.
constexpr int kPartnerMaxLen = 4;      // commutator partners: all reduced words up to this length
constexpr int kCommutatorCap = 400;    // pool prefix paired in a commutator round
constexpr int kConjugatorCap = 48;     // clean elements used as conjugators
constexpr int kConjPowerMax = 12;      // conjugator exponent range
constexpr int kConjTargetCap = 240;    // pool prefix being conjugated
constexpr int kEliminationCap = 300;   // pool prefix scanned for commuting pairs
constexpr int kClusterMax = 6;         // commuting-cluster size for kernel elimination
constexpr int kAnchorCap = 80;         // cluster anchors per pass
constexpr long long kExponentCap = 1 << 20;  // largest integer exponent in combinations
constexpr int kRefinePasses = 3;
constexpr size_t kPoolMax = 20000;
constexpr int kCleanSupportMax = 6;    // refinement only keeps elements at most this messy

// Transvection-layer caps (alternating forms): rank-1 unipotents of a
// symplectic group are x -> x + gamma w(p,x) p, so conjugation orbits live on
// direction vectors and can be walked far more deeply than matrix words.
constexpr size_t kBaseCap = 6;           // distinct seed directions for the orbit walk
constexpr size_t kDirectionCap = 60000;  // direction table size
constexpr int kTransportZCap = 48;       // axis transvections used for coordinate elimination
constexpr size_t kTransportTargetCap = 8000;  // directions eligible for transport
constexpr int kTransportPasses = 2;
constexpr size_t kPlaneSrcCap = 800;     // directions scanned for orthogonal pairs
constexpr size_t kPlaneCap = 1500;       // orthogonal pairs kept
constexpr int kBracketZCap = 16;         // conjugators in the bracket solve
constexpr int kBracketPowerMax = 2;
constexpr size_t kAxisAdmitCap = 96;     // axis transvections admitted to the pool

// Refinement work ceiling in matrix-multiply units, scaled to the size of the
// word enumeration so small searches stay small. Counting work instead of wall
// time keeps results machine-independent and deterministic.
constexpr std::uint64_t kRefineWorkCeiling = 25'000'000;
constexpr std::uint64_t kRefineWorkFloor = 20'000;

std::uint64_t refineBudget(int maxWordLength) {
    std::uint64_t words = 2;
    for (int i = 0; i < maxWordLength && words < kRefineWorkCeiling; ++i) words *= 3;
    std::uint64_t budget = 16 * words;
    return std::clamp(budget, kRefineWorkFloor, kRefineWorkCeiling);
}

struct Node {
    QMatrix m;
    QMatrix inv;
    QMatrix log;  // nilpotent logarithm
    std::string name;
    int supportSize = 0;
    int cost = 0;  // rough construction depth, for ordering only
};

QMatrix nilpotentLog(const QMatrix& e) {
    const Eigen::Index n = e.rows();
    QMatrix nil = e - qIdentity(n);
    QMatrix term = nil;
    QMatrix acc = nil;
    for (int k = 2; k < n; ++k) {
        term = term * nil;
        if (isZeroMatrix(term)) break;
        acc += Rational((k % 2 == 0) ? -1 : 1) / Rational(k) * term;
    }
    return acc;
}

int offDiagSupport(const QMatrix& m) {
    int count = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0) ++count;
    return count;
}

Word compressPath(const std::vector<int>& path) {
    // 0=a, 1=a^-1, 2=b, 3=b^-1
    Word w;
    for (int g : path) {
        const char* sym = g < 2 ? "a" : "b";
        long long e = (g % 2 == 0) ? 1 : -1;
        if (!w.empty() && w.back().symbol == sym)
            w.back().exp += e;
        else
            w.push_back({sym, e});
        if (!w.empty() && w.back().exp == 0) w.pop_back();
    }
    return w;
}

Word concatWords(std::initializer_list<Word> parts) {
    Word out;
    for (const auto& part : parts)
        for (const auto& f : part) out.push_back(f);
    return out;
}

// p scaled to a primitive integer vector with positive first nonzero entry;
// returns the scalar s with input = s * output.
Rational primitivize(QVector& p) {
    Integer l = 1;
    for (Eigen::Index i = 0; i < p.size(); ++i) l = lcm(l, denominator(p(i)));
    Integer g = 0;
    for (Eigen::Index i = 0; i < p.size(); ++i) g = gcd(g, numerator(p(i) * Rational(l)));
    if (g == 0) return Rational(0);
    Rational scale = Rational(g) / Rational(l);
    for (Eigen::Index i = 0; i < p.size(); ++i)
        if (p(i) != 0) {
            if (p(i) < 0) scale = -scale;
            break;
        }
    p /= scale;
    return scale;
}

// Exact rational square root, if one exists.
std::optional<Rational> rationalSqrt(const Rational& x) {
    if (x < 0) return std::nullopt;
    Integer nr = sqrt(numerator(x)), dr = sqrt(denominator(x));
    if (nr * nr != numerator(x) || dr * dr != denominator(x)) return std::nullopt;
    return Rational(nr) / Rational(dr);
}

struct Engine {
    Eigen::Index n;
    InvariantForm standard;
    std::vector<RootGroupPattern> targets;
    unsigned long maxBits;
    SearchStats stats;

    std::vector<Node> pool;  // unipotent candidates, creation order
    std::unordered_map<std::string, int> seen;
    std::vector<SLP::Definition> defs;  // global, creation order
    std::vector<int> witnessPoolIdx;    // per target, -1 while unsettled
    int nameCounter = 0;
    std::uint64_t work = 0;
    std::uint64_t budget = kRefineWorkCeiling;

    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    explicit Engine(const InvariantForm& standardForm, std::vector<RootGroupPattern> targetList,
                    unsigned long bits)
        : n(standardForm.matrix.rows()),
          standard(standardForm),
          targets(std::move(targetList)),
          maxBits(bits),
          witnessPoolIdx(targets.size(), -1) {}

    bool done() const {
        for (int w : witnessPoolIdx)
            if (w < 0) return false;
        return true;
    }
    bool exhausted() const { return work > budget; }
    bool stop() const { return done() || exhausted(); }

    bool bitsOk(const QMatrix& m) {
        if (maxEntryBits(m) <= maxBits) return true;
        ++stats.pruned;
        return false;
    }

    std::string freshName() { return "u" + std::to_string(++nameCounter); }

    void registerDef(const std::string& name, Word word) { defs.push_back({name, std::move(word)}); }

    // Adds a unipotent element to the pool under a new name; returns its index
    // or -1 when it is trivial, too large, duplicate, or (for refinement
    // products) too messy to be a useful ingredient.
    int addCandidate(const QMatrix& m, const Word& def, int cost, bool requireClean = false) {
        if (pool.size() >= kPoolMax) return -1;
        if (!bitsOk(m)) return -1;
        if (matEq(m, qIdentity(n))) return -1;
        std::string fp = formatMatrix(m);
        auto it = seen.find(fp);
        if (it != seen.end()) return -1;
        work += 30;  // inverse, log, membership checks
        Node node;
        node.m = m;
        node.log = nilpotentLog(m);
        node.supportSize = offDiagSupport(node.log);
        if (requireClean && node.supportSize > kCleanSupportMax) return -1;
        node.inv = exactInverse(m);
        node.cost = cost;
        node.name = freshName();
        registerDef(node.name, def);
        int idx = static_cast<int>(pool.size());
        seen.emplace(std::move(fp), idx);
        pool.push_back(std::move(node));
        ++stats.candidates;
        checkPatterns(idx);
        return idx;
    }

    void checkPatterns(int idx) {
        for (size_t t = 0; t < targets.size(); ++t) {
            if (witnessPoolIdx[t] >= 0) continue;
            if (rootGroupMembership(pool[static_cast<size_t>(idx)].m, standard, targets[t]) ==
                Membership::NonTrivialMember)
                witnessPoolIdx[t] = idx;
        }
    }

    // Indices sorted by (log support size, creation order): cleanest first.
    std::vector<int> cleanOrder() const {
        std::vector<int> order(pool.size());
        for (size_t i = 0; i < pool.size(); ++i) order[i] = static_cast<int>(i);
        std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
            return pool[static_cast<size_t>(x)].supportSize < pool[static_cast<size_t>(y)].supportSize;
        });
        return order;
    }

    void tryCommutator(const QMatrix& xm, const QMatrix& xinv, const std::string& xname,
                       const QMatrix& ym, const QMatrix& yinv, const std::string& yname, int cost) {
        ++stats.commutatorsTried;
        work += 6;
        QMatrix cm = xm * ym * xinv * yinv;
        if (!isUnipotent(cm)) return;
        addCandidate(cm, Word{{xname, 1}, {yname, 1}, {xname, -1}, {yname, -1}}, cost, true);
    }

    // Pairwise commutator round: pool elements against partners first, then
    // against each other, cleanest elements first. The order is a snapshot:
    // elements born during the round pair up in the next one.
    void commutatorRound(const std::vector<Node>& partners) {
        std::vector<int> order = cleanOrder();
        if (order.size() > kCommutatorCap) order.resize(kCommutatorCap);
        for (size_t xi = 0; xi < order.size() && !stop(); ++xi) {
            const int x = order[xi];
            for (const auto& w : partners) {
                if (stop()) break;
                tryCommutator(pool[static_cast<size_t>(x)].m, pool[static_cast<size_t>(x)].inv,
                              pool[static_cast<size_t>(x)].name, w.m, w.inv, w.name,
                              pool[static_cast<size_t>(x)].cost + w.cost + 1);
            }
            for (size_t yi = xi + 1; yi < order.size() && !stop(); ++yi) {
                const int y = order[yi];
                tryCommutator(pool[static_cast<size_t>(x)].m, pool[static_cast<size_t>(x)].inv,
                              pool[static_cast<size_t>(x)].name, pool[static_cast<size_t>(y)].m,
                              pool[static_cast<size_t>(y)].inv, pool[static_cast<size_t>(y)].name,
                              pool[static_cast<size_t>(x)].cost + pool[static_cast<size_t>(y)].cost + 1);
            }
        }
    }

    // Conjugation closure: z^m u z^-m stays unipotent and often lands on a
    // smaller support when z is clean.
    void conjugationPass(const std::vector<Node>& partners) {
        std::vector<int> order = cleanOrder();
        std::vector<int> conjugators = order;
        if (conjugators.size() > kConjugatorCap) conjugators.resize(kConjugatorCap);
        std::vector<int> targetsIdx = order;
        if (targetsIdx.size() > kConjTargetCap) targetsIdx.resize(kConjTargetCap);

        for (int z : conjugators) {
            if (stop()) return;
            const Node zn = pool[static_cast<size_t>(z)];  // copy: pool may grow
            for (int u : targetsIdx) {
                if (stop()) return;
                if (u == z) continue;
                const Node un = pool[static_cast<size_t>(u)];
                QMatrix zp = qIdentity(n);
                for (int m = 1; m <= kConjPowerMax && !stop(); ++m) {
                    zp = zp * zn.m;
                    if (!bitsOk(zp)) break;
                    work += 10;
                    QMatrix zpInv = matPow(zn.inv, m);
                    ++stats.combinationsTried;
                    addCandidate(zp * un.m * zpInv, Word{{zn.name, m}, {un.name, 1}, {zn.name, -m}},
                                 zn.cost + un.cost + 1, true);
                    ++stats.combinationsTried;
                    addCandidate(zpInv * un.m * zp, Word{{zn.name, -m}, {un.name, 1}, {zn.name, m}},
                                 zn.cost + un.cost + 1, true);
                }
            }
        }
        // single conjugation by non-unipotent partner words, both orientations
        std::vector<int> ord = cleanOrder();
        if (ord.size() > kConjTargetCap) ord.resize(kConjTargetCap);
        for (const auto& w : partners) {
            if (stop()) return;
            for (int u : ord) {
                const Node un = pool[static_cast<size_t>(u)];
                work += 8;
                ++stats.combinationsTried;
                addCandidate(w.m * un.m * w.inv, Word{{w.name, 1}, {un.name, 1}, {w.name, -1}},
                             un.cost + w.cost + 1, true);
                ++stats.combinationsTried;
                addCandidate(w.inv * un.m * w.m, Word{{w.name, -1}, {un.name, 1}, {w.name, 1}},
                             un.cost + w.cost + 1, true);
                if (stop()) return;
            }
        }
    }

    static std::pair<long long, long long> primitivePair(const Rational& xp, const Rational& yp) {
        // ci*xp + cj*yp == 0 with coprime integers
        Rational q = yp / xp;
        Integer nu = numerator(q), de = denominator(q);
        if (abs(nu) > kExponentCap || de > kExponentCap) return {0, 0};
        return {-static_cast<long long>(nu), static_cast<long long>(de)};
    }

    // For commuting x, y: x^ci y^cj has log ci*X + cj*Y. Choosing (ci, cj) to
    // cancel one shared support position produces elements of smaller support.
    void pairEliminationPass() {
        std::vector<int> order = cleanOrder();
        if (order.size() > kEliminationCap) order.resize(kEliminationCap);
        for (size_t xi = 0; xi < order.size() && !stop(); ++xi) {
            for (size_t yi = xi + 1; yi < order.size() && !stop(); ++yi) {
                const Node& x = pool[static_cast<size_t>(order[xi])];
                const Node& y = pool[static_cast<size_t>(order[yi])];
                work += 2;
                if (!matEq(x.m * y.m, y.m * x.m)) continue;
                for (Eigen::Index i = 0; i < n && !stop(); ++i)
                    for (Eigen::Index j = 0; j < n && !stop(); ++j) {
                        if (x.log(i, j) == 0 || y.log(i, j) == 0) continue;
                        auto [ci, cj] = primitivePair(x.log(i, j), y.log(i, j));
                        if (ci == 0 && cj == 0) continue;
                        QMatrix z = Rational(ci) * x.log + Rational(cj) * y.log;
                        if (isZeroMatrix(z)) continue;
                        ++stats.combinationsTried;
                        work += 4;
                        QMatrix e = matPow(x.m, ci) * matPow(y.m, cj);
                        addCandidate(e, Word{{x.name, ci}, {y.name, cj}}, x.cost + y.cost + 1, true);
                    }
            }
        }
    }

    // Commuting-cluster kernel elimination: integer combinations of commuting
    // logs vanishing outside the pattern support.
    void clusterEliminationPass(const RootGroupPattern& pattern) {
        std::vector<int> order = cleanOrder();
        if (order.size() > kEliminationCap) order.resize(kEliminationCap);
        int anchors = 0;
        for (size_t ai = 0; ai < order.size() && anchors < kAnchorCap && !stop(); ++ai) {
            std::vector<int> cluster{order[ai]};
            for (size_t bi = ai + 1; bi < order.size() && cluster.size() < kClusterMax; ++bi) {
                bool ok = true;
                work += 2;
                for (int c : cluster)
                    if (!matEq(pool[static_cast<size_t>(c)].m * pool[static_cast<size_t>(order[bi])].m,
                               pool[static_cast<size_t>(order[bi])].m * pool[static_cast<size_t>(c)].m)) {
                        ok = false;
                        break;
                    }
                if (ok) cluster.push_back(order[bi]);
            }
            if (cluster.size() < 2) continue;
            ++anchors;

            std::vector<std::pair<Eigen::Index, Eigen::Index>> outside;
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j) {
                    bool inSupport = false;
                    for (const auto& [si, sj] : pattern.support)
                        if (si == i && sj == j) { inSupport = true; break; }
                    if (!inSupport) outside.emplace_back(i, j);
                }
            QMatrix sys(static_cast<Eigen::Index>(outside.size()),
                        static_cast<Eigen::Index>(cluster.size()));
            for (size_t c = 0; c < cluster.size(); ++c)
                for (size_t r = 0; r < outside.size(); ++r)
                    sys(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                        pool[static_cast<size_t>(cluster[c])].log(outside[r].first, outside[r].second);

            for (const auto& k : kernelBasis(sys)) {
                Integer l = 1;
                for (Eigen::Index i = 0; i < k.size(); ++i) l = lcm(l, denominator(k(i)));
                std::vector<Integer> coeff(static_cast<size_t>(k.size()));
                Integer g = 0;
                for (Eigen::Index i = 0; i < k.size(); ++i) {
                    coeff[static_cast<size_t>(i)] = numerator(k(i) * Rational(l));
                    g = gcd(g, coeff[static_cast<size_t>(i)]);
                }
                if (g == 0) continue;
                bool fits = true;
                for (auto& c : coeff) {
                    c /= g;
                    if (abs(c) > kExponentCap) fits = false;
                }
                if (!fits) continue;
                QMatrix z = QMatrix::Zero(n, n);
                for (size_t c = 0; c < cluster.size(); ++c)
                    z += Rational(coeff[c]) * pool[static_cast<size_t>(cluster[c])].log;
                if (isZeroMatrix(z)) continue;
                ++stats.combinationsTried;
                work += 4;
                QMatrix e = qIdentity(n);
                Word word;
                for (size_t c = 0; c < cluster.size(); ++c) {
                    if (coeff[c] == 0) continue;
                    long long exp = static_cast<long long>(coeff[c]);
                    e = e * matPow(pool[static_cast<size_t>(cluster[c])].m, exp);
                    word.push_back({pool[static_cast<size_t>(cluster[c])].name, exp});
                }
                addCandidate(e, word, 4, true);
                if (stop()) return;
            }
        }
    }

    // ---- transvection layer (alternating forms) ----------------------------
    //
    // Rank-1 unipotent isometries of an alternating form are the transvections
    // t(p, gamma) = I + gamma p (p^t M); conjugation moves the direction p by
    // the conjugating element. Directions are cheap to transport, so the orbit
    // can be explored to the full word-length bound, far beyond what the
    // matrix enumeration reaches for conjugates.

    struct Direction {
        QVector p;       // primitive integer direction
        Rational gamma;  // t = I + gamma p (p^t M)
        Word word;       // program evaluating to t
    };
    std::vector<Direction> dirs;
    std::unordered_map<std::string, int> dirSeen;
    std::vector<int> axisDirs;  // directions admitted to the pool as elements

    std::string dirKey(const QVector& p) const {
        std::string key;
        for (Eigen::Index i = 0; i < p.size(); ++i) {
            key += fmtRational(p(i));
            key += ',';
        }
        return key;
    }

    QMatrix transvectionLog(const QVector& p, const Rational& gamma) const {
        return gamma * (p * (p.transpose() * standard.matrix));
    }

    Rational omega(const QVector& u, const QVector& v) const {
        return (u.transpose() * standard.matrix * v)(0, 0);
    }

    // Registers a direction; checks the materialized transvection against the
    // target patterns and admits axis-like ones to the pool as ingredients.
    // The program word is only built when the direction is actually new.
    template <typename WordFn>
    void addDirection(QVector p, Rational gamma, const WordFn& makeWord) {
        if (dirs.size() >= kDirectionCap || gamma == 0) return;
        Rational s = primitivize(p);
        if (s == 0) return;
        gamma = gamma * s * s;
        std::string key = dirKey(p);
        if (dirSeen.count(key)) return;
        work += 2;
        dirSeen.emplace(std::move(key), static_cast<int>(dirs.size()));
        dirs.push_back({p, gamma, makeWord()});
        const Word& word = dirs.back().word;

        QMatrix logm = transvectionLog(p, gamma);
        int support = offDiagSupport(logm);
        bool wanted = false;
        for (size_t t = 0; t < targets.size() && !wanted; ++t) {
            if (witnessPoolIdx[t] >= 0) continue;
            bool inside = true;
            for (Eigen::Index i = 0; i < n && inside; ++i)
                for (Eigen::Index j = 0; j < n && inside; ++j) {
                    if (logm(i, j) == 0) continue;
                    bool ok = false;
                    for (const auto& [si, sj] : targets[t].support)
                        if (si == i && sj == j) { ok = true; break; }
                    inside = ok;
                }
            wanted = inside;
        }
        if (wanted || (support <= 2 && axisDirs.size() < kAxisAdmitCap)) {
            QMatrix e = qIdentity(n) + logm;
            addCandidate(e, word, 6);
            axisDirs.push_back(static_cast<int>(dirs.size()) - 1);
        }
    }

    // direction indices sorted by coordinate size, structured entries first
    std::vector<int> sortedDirOrder() const {
        std::vector<std::pair<unsigned long, int>> keyed;
        keyed.reserve(dirs.size());
        for (size_t i = 0; i < dirs.size(); ++i) {
            unsigned long h = 0;
            for (Eigen::Index r = 0; r < dirs[i].p.size(); ++r)
                h = std::max(h, entryBits(dirs[i].p(r)));
            keyed.emplace_back(h, static_cast<int>(i));
        }
        std::stable_sort(keyed.begin(), keyed.end());
        std::vector<int> order;
        order.reserve(keyed.size());
        for (const auto& [h, i] : keyed) order.push_back(i);
        return order;
    }

    // Walks all reduced words w of length <= maxLen in breadth-first order
    // (iterative deepening), tracking w*p for every base direction at once.
    // Short conjugators therefore enter the table before long ones, which is
    // what keeps the direction cap meaningful.
    void directionWalk(const QMatrix* gens, const int* ginv, int maxLen,
                       const std::vector<Direction>& bases) {
        if (bases.empty() || maxLen <= 0) return;
        const int k = static_cast<int>(bases.size());
        QMatrix v(n, k);
        for (int i = 0; i < k; ++i) v.col(i) = bases[i].p;
        std::vector<int> path;
        std::function<void(const QMatrix&, int, int)> walk = [&](const QMatrix& cur, int depth,
                                                                 int targetLen) {
            if (done() || dirs.size() >= kDirectionCap) return;
            for (int g = 0; g < 4; ++g) {
                if (!path.empty() && g == ginv[path.back()]) continue;
                QMatrix next = gens[g] * cur;
                work += 1;
                path.push_back(g);
                if (depth + 1 == targetLen) {
                    for (int i = 0; i < k; ++i)
                        addDirection(next.col(i), bases[static_cast<size_t>(i)].gamma, [&] {
                            Word conj = compressPath(path);
                            return concatWords({conj, bases[static_cast<size_t>(i)].word,
                                                inverseWord(conj)});
                        });
                } else {
                    walk(next, depth + 1, targetLen);
                }
                path.pop_back();
                if (done() || dirs.size() >= kDirectionCap) return;
            }
        };
        for (int len = 1; len <= maxLen && !done() && dirs.size() < kDirectionCap; ++len)
            walk(v, 0, len);
    }

    // Coordinate elimination on directions: an axis transvection power z^m
    // moves p to p + m gamma_z w(p_z, p) p_z, which is affine in m; integral
    // choices of m zero chosen coordinates, the way clean conjugators shrink
    // messy directions.
    void transportEliminationPass() {
        for (int pass = 0; pass < kTransportPasses && !stop(); ++pass) {
            std::vector<int> zs = axisDirs;
            if (zs.size() > kTransportZCap) zs.resize(kTransportZCap);
            std::vector<int> targetsOrder = sortedDirOrder();
            if (targetsOrder.size() > kTransportTargetCap) targetsOrder.resize(kTransportTargetCap);
            for (int zi : zs) {
                if (stop()) return;
                const Direction z = dirs[static_cast<size_t>(zi)];
                auto zNameIt = seen.find(formatMatrix(qIdentity(n) + transvectionLog(z.p, z.gamma)));
                if (zNameIt == seen.end()) continue;
                const std::string zName = pool[static_cast<size_t>(zNameIt->second)].name;
                for (size_t ti = 0; ti < targetsOrder.size() && !stop(); ++ti) {
                    const Direction d = dirs[static_cast<size_t>(targetsOrder[ti])];
                    Rational pairing = z.gamma * omega(z.p, d.p);
                    if (pairing == 0) continue;
                    work += 3;
                    for (Eigen::Index i = 0; i < n; ++i) {
                        if (z.p(i) == 0 || d.p(i) == 0) continue;
                        Rational mExact = -d.p(i) / (pairing * z.p(i));
                        if (denominator(mExact) != 1) continue;
                        Integer mInt = numerator(mExact);
                        if (mInt == 0 || abs(mInt) > kExponentCap) continue;
                        long long m = static_cast<long long>(mInt);
                        QVector moved = d.p + Rational(m) * pairing * z.p;
                        addDirection(moved, d.gamma, [&] {
                            return concatWords({Word{{zName, m}}, d.word, Word{{zName, -m}}});
                        });
                    }
                }
            }
        }
    }

    // Commutators of commuting-transvection products: s = t(p1)^j t(p2)^k and
    // its conjugate s' = z^m s z^-m have logs that bracket into
    // j^2 M1 + jk M2 + k^2 M3. Ratios j : k solving the quadratic conditions
    // "bracket vanishes outside the pattern" give exact root-group elements
    // [s, s'] whenever the bracket commutes with both logs.
    void bracketSolvePass() {
        // orthogonal direction pairs (planes) among the most structured
        // directions
        std::vector<int> srcOrder = sortedDirOrder();
        if (srcOrder.size() > kPlaneSrcCap) srcOrder.resize(kPlaneSrcCap);
        std::vector<std::pair<int, int>> planes;
        for (size_t i = 0; i < srcOrder.size() && planes.size() < kPlaneCap; ++i)
            for (size_t j = i + 1; j < srcOrder.size() && planes.size() < kPlaneCap; ++j) {
                work += 1;
                if (omega(dirs[static_cast<size_t>(srcOrder[i])].p,
                          dirs[static_cast<size_t>(srcOrder[j])].p) == 0)
                    planes.emplace_back(srcOrder[i], srcOrder[j]);
            }

        std::vector<int> zs = axisDirs;
        if (zs.size() > kBracketZCap) zs.resize(kBracketZCap);

        for (const auto& [i1, i2] : planes) {
            if (stop()) return;
            const Direction& d1 = dirs[static_cast<size_t>(i1)];
            const Direction& d2 = dirs[static_cast<size_t>(i2)];
            QMatrix p1 = transvectionLog(d1.p, d1.gamma);
            QMatrix p2 = transvectionLog(d2.p, d2.gamma);
            for (int zi : zs) {
                if (stop()) return;
                const Direction& z = dirs[static_cast<size_t>(zi)];
                auto zSeen = seen.find(formatMatrix(qIdentity(n) + transvectionLog(z.p, z.gamma)));
                if (zSeen == seen.end()) continue;
                const Node& zNode = pool[static_cast<size_t>(zSeen->second)];
                for (int m = 1; m <= kBracketPowerMax && !stop(); ++m) {
                    work += 20;
                    // transported plane
                    auto moveBy = [&](const QVector& x) {
                        return QVector(x + Rational(m) * z.gamma * omega(z.p, x) * z.p);
                    };
                    QVector q1 = moveBy(d1.p), q2 = moveBy(d2.p);
                    Rational g1 = d1.gamma, g2 = d2.gamma;
                    Rational s1 = primitivize(q1), s2 = primitivize(q2);
                    if (s1 == 0 || s2 == 0) continue;
                    Rational g1p = g1 * s1 * s1, g2p = g2 * s2 * s2;
                    QMatrix p1c = transvectionLog(q1, g1p);
                    QMatrix p2c = transvectionLog(q2, g2p);

                    QMatrix m1 = p1 * p1c - p1c * p1;
                    QMatrix m2 = (p1 * p2c - p2c * p1) + (p2 * p1c - p1c * p2);
                    QMatrix m3 = p2 * p2c - p2c * p2;
                    if (isZeroMatrix(m1) && isZeroMatrix(m2) && isZeroMatrix(m3)) continue;

                    for (size_t t = 0; t < targets.size(); ++t) {
                        if (witnessPoolIdx[t] >= 0) continue;
                        solveBracketTarget(d1, d2, q1, q2, g1p, g2p, zNode.name, m, m1, m2, m3,
                                           targets[t]);
                        if (stop()) break;
                    }
                }
            }
        }
    }

    // Find integer (j, k) with j^2 M1 + jk M2 + k^2 M3 supported on the
    // pattern, then build the two products and their commutator.
    void solveBracketTarget(const Direction& d1, const Direction& d2, const QVector& q1,
                            const QVector& q2, const Rational& g1p, const Rational& g2p,
                            const std::string& zName, int m, const QMatrix& m1, const QMatrix& m2,
                            const QMatrix& m3, const RootGroupPattern& pattern) {
        std::vector<std::array<Rational, 3>> conds;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                bool inside = false;
                for (const auto& [si, sj] : pattern.support)
                    if (si == i && sj == j) { inside = true; break; }
                if (inside) continue;
                if (m1(i, j) == 0 && m2(i, j) == 0 && m3(i, j) == 0) continue;
                conds.push_back({m1(i, j), m2(i, j), m3(i, j)});
            }

        std::vector<std::pair<long long, long long>> candidates;
        auto pushRatio = [&](const Rational& t) {
            Integer nu = numerator(t), de = denominator(t);
            if (abs(nu) > kExponentCap || de > kExponentCap) return;
            candidates.emplace_back(static_cast<long long>(nu), static_cast<long long>(de));
        };
        if (conds.empty()) {
            candidates = {{1, 0}, {0, 1}, {1, 1}};
        } else {
            // roots of the first nontrivial quadratic a t^2 + b t + c in t = j/k
            const auto& [a, b, c] = std::tie(conds[0][0], conds[0][1], conds[0][2]);
            if (a == 0 && b == 0 && c == 0) return;
            if (a == 0) {
                if (b != 0) pushRatio(-c / b);
                candidates.emplace_back(1, 0);  // k = 0 branch
            } else {
                auto disc = rationalSqrt(b * b - 4 * a * c);
                if (disc) {
                    pushRatio((-b + *disc) / (2 * a));
                    pushRatio((-b - *disc) / (2 * a));
                }
            }
        }

        for (auto [j, k] : candidates) {
            if (stop()) return;
            if (j == 0 && k == 0) continue;
            Integer g = gcd(Integer(j < 0 ? -j : j), Integer(k < 0 ? -k : k));
            if (g > 1) { j /= static_cast<long long>(g); k /= static_cast<long long>(g); }
            QMatrix z = Rational(j) * Rational(j) * m1 + Rational(j) * Rational(k) * m2 +
                        Rational(k) * Rational(k) * m3;
            work += 6;
            bool okOutside = true;
            for (Eigen::Index i = 0; i < n && okOutside; ++i)
                for (Eigen::Index jj = 0; jj < n && okOutside; ++jj) {
                    if (z(i, jj) == 0) continue;
                    bool inside = false;
                    for (const auto& [si, sj] : pattern.support)
                        if (si == i && sj == jj) { inside = true; break; }
                    okOutside = inside;
                }
            if (!okOutside || isZeroMatrix(z)) continue;

            // materialize t(p1), t(p2) and the commutator of the two products
            ++stats.combinationsTried;
            work += 30;
            QMatrix t1 = qIdentity(n) + transvectionLog(d1.p, d1.gamma);
            QMatrix t2 = qIdentity(n) + transvectionLog(d2.p, d2.gamma);
            int idx1 = addCandidate(t1, d1.word, 6);
            int idx2 = addCandidate(t2, d2.word, 6);
            auto nameOf = [&](const QMatrix& mm) -> std::string {
                auto it = seen.find(formatMatrix(mm));
                return it == seen.end() ? std::string() : pool[static_cast<size_t>(it->second)].name;
            };
            (void)idx1;
            (void)idx2;
            std::string n1 = nameOf(t1), n2 = nameOf(t2);
            if (n1.empty() || n2.empty()) continue;

            QMatrix s1 = qIdentity(n) + Rational(j) * (t1 - qIdentity(n)) +
                         Rational(k) * (t2 - qIdentity(n));
            QMatrix s2 = qIdentity(n) + Rational(j) * transvectionLog(q1, g1p) +
                         Rational(k) * transvectionLog(q2, g2p);
            Word w1 = Word{{n1, j}, {n2, k}};
            if (j == 0) w1 = Word{{n2, k}};
            if (k == 0) w1 = Word{{n1, j}};
            int is1 = addCandidate(s1, w1, 7);
            std::string sName = is1 >= 0 ? pool[static_cast<size_t>(is1)].name : nameOf(s1);
            if (sName.empty()) continue;
            Word w2 = concatWords({Word{{zName, m}}, Word{{sName, 1}}, Word{{zName, -m}}});
            int is2 = addCandidate(s2, w2, 8);
            std::string sName2 = is2 >= 0 ? pool[static_cast<size_t>(is2)].name : nameOf(s2);
            if (sName2.empty()) continue;

            QMatrix comm = s1 * s2 * exactInverse(s1) * exactInverse(s2);
            work += 10;
            if (!isUnipotent(comm)) continue;
            addCandidate(comm, Word{{sName, 1}, {sName2, 1}, {sName, -1}, {sName2, -1}}, 9);
            if (done()) return;
        }
    }

    void runTransvectionLayer(const QMatrix* gens, const int* ginv, int maxLen) {
        if (standard.kind != FormKind::Alternating) return;
        // seed directions from the rank-1 candidates found by the enumeration
        std::vector<Direction> bases;
        for (const auto& node : pool) {
            if (bases.size() >= kBaseCap) break;
            QMatrix logm = node.log;
            if (!isZeroMatrix(logm * logm)) continue;
            // find a rank-1 decomposition log = gamma p (p^t M)
            Eigen::Index col = -1;
            for (Eigen::Index j = 0; j < n && col < 0; ++j)
                if (!isZeroMatrix(logm.col(j))) col = j;
            if (col < 0) continue;
            QVector p = logm.col(col);
            Rational s = primitivize(p);
            if (s == 0) continue;
            QMatrix probe = p * (p.transpose() * standard.matrix);
            // logm must be a scalar multiple of probe
            Rational gamma = 0;
            bool match = true;
            for (Eigen::Index i = 0; i < n && match; ++i)
                for (Eigen::Index j = 0; j < n && match; ++j) {
                    if ((probe(i, j) == 0) != (logm(i, j) == 0)) match = false;
                    else if (probe(i, j) != 0) {
                        Rational r = logm(i, j) / probe(i, j);
                        if (gamma == 0) gamma = r;
                        else if (r != gamma) match = false;
                    }
                }
            if (!match || gamma == 0) continue;
            bool dup = false;
            for (const auto& bse : bases)
                if (matEq(bse.p, p)) dup = true;
            if (dup) continue;
            bases.push_back({p, gamma, Word{{node.name, 1}}});
        }
        for (const auto& bse : bases) addDirection(bse.p, bse.gamma, [&] { return bse.word; });
        const bool debug = std::getenv("HGM_SEARCH_DEBUG") != nullptr;
        if (debug)
            std::cerr << "[layer] bases=" << bases.size() << "\n";
        directionWalk(gens, ginv, maxLen, bases);
        if (debug) {
            std::cerr << "[layer] dirs=" << dirs.size() << " axis=" << axisDirs.size()
                      << " work=" << work << "\n";
            for (const char* probe : {"0,1,0,0,", "0,0,1,0,", "56,0,3,0,", "56,21,3,0,"})
                std::cerr << "[layer] have " << probe << ": " << dirSeen.count(probe) << "\n";
        }
        if (stop()) return;
        transportEliminationPass();
        if (debug) {
            std::cerr << "[layer] after transport dirs=" << dirs.size() << " work=" << work << "\n";
            for (const char* probe : {"56,0,3,0,"})
                std::cerr << "[layer] have " << probe << ": " << dirSeen.count(probe) << "\n";
        }
        if (stop()) return;
        bracketSolvePass();
        if (debug)
            std::cerr << "[layer] after brackets pool=" << pool.size() << " work=" << work
                      << " done=" << done() << "\n";
    }

    void refine(const std::vector<Node>& partners, const QMatrix* gens, const int* ginv,
                int maxLen) {
        work = 0;  // the enumeration and commutator rounds are budgeted by their own caps
        runTransvectionLayer(gens, ginv, maxLen);
        for (int pass = 0; pass < kRefinePasses && !stop(); ++pass) {
            pairEliminationPass();
            if (stop()) break;
            conjugationPass(partners);
            if (stop()) break;
            for (const auto& pattern : targets) {
                clusterEliminationPass(pattern);
                if (stop()) break;
            }
            if (stop()) break;
            commutatorRound(partners);
        }
    }

    // Self-contained program over {a, b} ending in the named definition.
    SLP assemble(const std::string& witnessName) const {
        std::set<std::string> needed{witnessName};
        // defs are in creation order; scan backwards collecting references
        std::vector<bool> keep(defs.size(), false);
        for (size_t i = defs.size(); i-- > 0;) {
            if (!needed.count(defs[i].name)) continue;
            keep[i] = true;
            for (const auto& f : defs[i].word)
                if (f.symbol != "a" && f.symbol != "b") needed.insert(f.symbol);
        }
        SLP slp;
        slp.baseSymbols = {"a", "b"};
        for (size_t i = 0; i < defs.size(); ++i)
            if (keep[i]) slp.defs.push_back(defs[i]);
        return slp;
    }

    void finishStats() {
        stats.wallSeconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

} // namespace

SearchResult searchRootUnipotents(const GroupPresentation& pres, const QMatrix& P,
                                  const SearchConfig& cfg) {
    InvariantForm form = solveInvariantForm(pres);
    InvariantForm standard = applyBasisChange(P, form);
    if (!isAntidiagonal(standard.matrix))
        throw NonStandardForm("P does not bring the invariant form to antidiagonal shape");

    GroupKind kind = groupKindFor(pres.cls);
    RootSystemData roots = rootSystemData(kind);
    std::vector<RootGroupPattern> targets = cfg.targets;
    if (targets.empty()) {
        targets.push_back(patternFor(kind, roots.highest));
        targets.push_back(patternFor(kind, roots.secondHighest));
    }

    Engine engine(standard, targets, cfg.maxEntryBits);
    engine.budget = refineBudget(cfg.maxWordLength);

    const QMatrix pInv = exactInverse(P);
    const QMatrix a = pInv * pres.A * P;
    const QMatrix b = pInv * pres.B * P;
    const QMatrix gens[4] = {a, exactInverse(a), b, exactInverse(b)};
    const int ginv[4] = {1, 0, 3, 2};

    // Breadth-first word enumeration, realized as iterative deepening so only
    // the current path is held; candidates are tested once, at their length.
    std::vector<int> path;
    std::vector<QMatrix> mats{qIdentity(pres.n)};
    std::function<void(int, int)> walk = [&](int depth, int targetLen) {
        if (engine.done()) return;
        for (int g = 0; g < 4; ++g) {
            if (!path.empty() && g == ginv[path.back()]) continue;
            ++engine.stats.nodesExpanded;
            QMatrix next = mats.back() * gens[g];
            if (!engine.bitsOk(next)) continue;
            path.push_back(g);
            if (depth + 1 == targetLen) {
                Rational tr = 0;
                for (Eigen::Index i = 0; i < pres.n; ++i) tr += next(i, i);
                if (tr == Rational(pres.n) && isUnipotent(next))
                    engine.addCandidate(next, compressPath(path), targetLen);
            } else {
                mats.push_back(std::move(next));
                walk(depth + 1, targetLen);
                mats.pop_back();
            }
            path.pop_back();
            if (engine.done()) return;
        }
    };
    for (int len = 1; len <= cfg.maxWordLength && !engine.done(); ++len) walk(0, len);

    // Optional seed elements join the pool before any refinement.
    if (!cfg.seeds.defs.empty()) {
        SLP seeds = cfg.seeds;
        seeds.baseSymbols = {"a", "b"};
        validateSLP(seeds);
        for (const auto& d : seeds.defs)
            for (const auto& existing : engine.defs)
                if (existing.name == d.name)
                    throw Error("seed name '" + d.name + "' collides with a generated name");
        Bindings bound = evaluateSLP(seeds, {{"a", a}, {"b", b}});
        for (const auto& d : seeds.defs) {
            engine.registerDef(d.name, d.word);
            const QMatrix& m = bound.at(d.name);
            if (isUnipotent(m) && !matEq(m, qIdentity(pres.n))) {
                std::string fp = formatMatrix(m);
                if (!engine.seen.count(fp)) {
                    Node node;
                    node.m = m;
                    node.inv = exactInverse(m);
                    node.log = nilpotentLog(m);
                    node.supportSize = offDiagSupport(node.log);
                    node.cost = 1;
                    node.name = d.name;
                    engine.seen.emplace(std::move(fp), static_cast<int>(engine.pool.size()));
                    engine.pool.push_back(std::move(node));
                    ++engine.stats.candidates;
                    engine.checkPatterns(static_cast<int>(engine.pool.size()) - 1);
                }
            }
        }
    }

    // Commutator partners: every reduced word up to the partner length bound.
    std::vector<Node> partners;
    {
        int cap = std::min(kPartnerMaxLen, cfg.maxWordLength);
        std::vector<int> ppath;
        std::function<void(int, QMatrix)> grow = [&](int depth, QMatrix m) {
            if (depth == cap) return;
            for (int g = 0; g < 4; ++g) {
                if (!ppath.empty() && g == ginv[ppath.back()]) continue;
                QMatrix next = m * gens[g];
                ppath.push_back(g);
                Node node;
                node.m = next;
                node.inv = exactInverse(next);
                node.cost = depth + 1;
                node.name = "w" + std::to_string(partners.size() + 1);
                partners.push_back(node);
                engine.registerDef(node.name, compressPath(ppath));
                grow(depth + 1, next);
                ppath.pop_back();
            }
        };
        grow(0, qIdentity(pres.n));
    }

    for (int round = 0; round < cfg.commutatorRounds && !engine.done(); ++round)
        engine.commutatorRound(partners);

    if (!engine.done()) engine.refine(partners, gens, ginv, cfg.maxWordLength);

    engine.finishStats();

    SearchResult result;
    result.stats = engine.stats;
    for (size_t t = 0; t < targets.size(); ++t) {
        if (engine.witnessPoolIdx[t] < 0) continue;
        FoundWitness w;
        w.name = engine.pool[static_cast<size_t>(engine.witnessPoolIdx[t])].name;
        w.root = targets[t].root;
        w.slp = engine.assemble(w.name);
        // witnesses must re-evaluate to the matrix that passed membership
        Bindings check = evaluateSLP(w.slp, {{"a", a}, {"b", b}});
        if (!matEq(check.at(w.name), engine.pool[static_cast<size_t>(engine.witnessPoolIdx[t])].m))
            throw Error("internal: witness program does not evaluate to its matrix");
        result.found.push_back(std::move(w));
    }
    result.allTargetsFound = engine.done();
    return result;
}

std::vector<SLP> reduceToPattern(const std::vector<PatternCandidate>& candidates,
                                 const RootGroupPattern& pattern, const InvariantForm& standard) {
    Engine engine(standard, {pattern}, 100000);
    for (size_t k = 0; k < candidates.size(); ++k) {
        const auto& cand = candidates[k];
        if (!isUnipotent(cand.m)) throw Error("reduceToPattern: candidate is not unipotent");
        std::string prefix = "c" + std::to_string(k + 1) + "_";
        if (cand.slp.defs.empty()) throw Error("reduceToPattern: candidate has no definitions");
        std::string last;
        for (const auto& d : cand.slp.defs) {
            Word w = d.word;
            for (auto& f : w)
                if (f.symbol != "a" && f.symbol != "b") f.symbol = prefix + f.symbol;
            last = prefix + d.name;
            engine.registerDef(last, w);
        }
        std::string fp = formatMatrix(cand.m);
        if (!engine.seen.count(fp)) {
            Node node;
            node.m = cand.m;
            node.inv = exactInverse(cand.m);
            node.log = nilpotentLog(cand.m);
            node.supportSize = offDiagSupport(node.log);
            node.cost = 1;
            node.name = last;
            engine.seen.emplace(std::move(fp), static_cast<int>(engine.pool.size()));
            engine.pool.push_back(std::move(node));
            engine.checkPatterns(static_cast<int>(engine.pool.size()) - 1);
        }
    }
    engine.refine({}, nullptr, nullptr, 0);
    std::vector<SLP> out;
    if (engine.witnessPoolIdx[0] >= 0)
        out.push_back(engine.assemble(engine.pool[static_cast<size_t>(engine.witnessPoolIdx[0])].name));
    return out;
}

Certificate certificateFromSearch(const ParameterPair& params, const QMatrix& P,
                                  const std::vector<FoundWitness>& witnesses,
                                  const SearchConfig& cfg) {
    Certificate cert;
    cert.params = params;
    cert.P = P;
    cert.slp.baseSymbols = {"A", "B", "C", "P"};
    cert.slp.defs.push_back({"a", parseWord("P^-1 A P")});
    cert.slp.defs.push_back({"b", parseWord("P^-1 B P")});
    std::set<std::string> have{"a", "b"};
    for (const auto& w : witnesses) {
        for (const auto& d : w.slp.defs) {
            if (have.count(d.name)) continue;
            have.insert(d.name);
            cert.slp.defs.push_back(d);
        }
        cert.claims.push_back({w.name, w.root});
    }
    cert.comments.push_back("found by bounded word/commutator search over the conjugated generators");
    cert.comments.push_back("bounds: words up to length " + std::to_string(cfg.maxWordLength) +
                            ", entries up to " + std::to_string(cfg.maxEntryBits) +
                            " bits, " + std::to_string(cfg.commutatorRounds) + " commutator rounds");
    validateSLP(cert.slp);
    return cert;
}

} // namespace hgm
