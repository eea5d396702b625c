#include <algorithm>
#include <future>
#include <map>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "wittlift/closures.hpp"
#include "wittlift/cohomology.hpp"
#include "wittlift/errors.hpp"

namespace wl {

CyclotomicModule CyclotomicModule::trivial(const FiniteGroup& G, i64 p) {
    if (!is_prime(p)) fail(ErrorKind::Precondition, "closure.prime", "p must be prime");
    return CyclotomicModule{p, std::vector<i64>(G.order(), 1)};
}

CyclotomicModule CyclotomicModule::from_generators(const FiniteGroup& G, i64 p,
                                                   const std::vector<std::pair<int, i64>>& images) {
    std::vector<std::pair<int, Mat>> mats;
    for (auto& [g, v] : images) {
        Mat M(1, 1);
        M(0, 0) = mod(v, p * p);
        mats.emplace_back(g, M);
    }
    Rep R = Rep::from_generators(G, p, 2, 1, mats);
    CyclotomicModule out{p, {}};
    for (int g = 0; g < G.order(); ++g) out.chi.push_back(R.act[g](0, 0));
    if (auto err = out.check(G); !err.empty()) fail(ErrorKind::Precondition, "closure.character", err);
    return out;
}

std::string CyclotomicModule::check(const FiniteGroup& G) const {
    i64 N = p * p;
    if (static_cast<int>(chi.size()) != G.order()) return "character has the wrong number of values";
    for (i64 v : chi)
        if (mod(v, p) == 0) return "character values must be units";
    if (mod(chi[0], N) != 1) return "character must send the identity to 1";
    for (int a = 0; a < G.order(); ++a)
        for (int b = 0; b < G.order(); ++b)
            if (mod(chi[G.mul(a, b)], N) != mulmod(chi[a], chi[b], N)) return "character is not a homomorphism";
    return "";
}

Rep CyclotomicModule::rep(const FiniteGroup& G, int k) const {
    if (k != 1 && k != 2) fail(ErrorKind::Precondition, "closure.level", "level must be 1 or 2");
    Rep R = Rep::trivial(G, p, k, 1);
    for (int g = 0; g < G.order(); ++g) R.act[g](0, 0) = mod(chi[g], R.modulus());
    return R;
}

ClosureGroup::ClosureGroup(FiniteGroup G, i64 p, bool smooth, std::vector<ClosureBlock> blocks)
    : G_(std::move(G)), p_(p), smooth_(smooth), blocks_(std::move(blocks)) {
    for (auto& b : blocks_) {
        b.offset = ncoords_;
        ncoords_ += b.width();
    }
    C_.assign(G_.order(), std::vector<i64>(ncoords_, 0));
    for (auto& b : blocks_) {
        int w = b.width();
        // cyclotomic: Shapiro image, t_i g = h t_j gives C(g)_i = c(h); smooth: (t(g), lambda(g))
        for (int g = 0; g < G_.order(); ++g)
            for (int i = 0; i < w; ++i) C_[g][b.offset + i] = b.cocycle[static_cast<size_t>(g) * w + i];
    }
}

std::optional<i64> ClosureGroup::order() const {
    boost::multiprecision::cpp_int n = G_.order();
    for (int i = 0; i < ncoords_; ++i) {
        n *= p_;
        if (n > (boost::multiprecision::cpp_int(1) << 62)) return std::nullopt;
    }
    return static_cast<i64>(n);
}

std::string ClosureGroup::order_string() const {
    boost::multiprecision::cpp_int n = G_.order();
    for (int i = 0; i < ncoords_; ++i) n *= p_;
    return n.str();
}

void ClosureGroup::act(int g, const std::vector<i64>& x, std::vector<i64>& out, i64 N) const {
    out.assign(ncoords_, 0);
    for (auto& b : blocks_) {
        for (int i = 0; i < b.npoints; ++i)
            out[b.offset + i] = mulmod(b.coef[g][i], x[b.offset + b.src[g][i]], N);
        if (b.smooth) out[b.offset + b.npoints] = x[b.offset + b.npoints];
    }
}

bool ClosureGroup::contains(const ClosureElement& e) const {
    if (e.g < 0 || e.g >= G_.order() || static_cast<int>(e.x.size()) != ncoords_) return false;
    i64 N = p_ * p_;
    for (int i = 0; i < ncoords_; ++i)
        if (e.x[i] < 0 || e.x[i] >= N || e.x[i] % p_ != C_[e.g][i]) return false;
    return true;
}

ClosureElement ClosureGroup::identity() const { return section(0); }

ClosureElement ClosureGroup::section(int g) const { return ClosureElement{g, C_[g]}; }

ClosureElement ClosureGroup::mul(const ClosureElement& a, const ClosureElement& b) const {
    i64 N = p_ * p_;
    std::vector<i64> gb;
    act(a.g, b.x, gb, N);
    ClosureElement out{G_.mul(a.g, b.g), std::vector<i64>(ncoords_, 0)};
    for (auto& blk : blocks_) {
        i64 lam = blk.smooth ? a.x[blk.offset + blk.npoints] : 1;
        for (int i = 0; i < blk.npoints; ++i) {
            int c = blk.offset + i;
            out.x[c] = mod(a.x[c] + mulmod(lam, gb[c], N), N);
        }
        if (blk.smooth) {
            int c = blk.offset + blk.npoints;
            out.x[c] = mulmod(a.x[c], gb[c], N);
        }
    }
    return out;
}

ClosureElement ClosureGroup::inv(const ClosureElement& a) const {
    i64 N = p_ * p_;
    int gi = G_.inv(a.g);
    // inverse inside the coordinate group, then transport by g^{-1}
    std::vector<i64> y(ncoords_, 0);
    for (auto& blk : blocks_) {
        i64 linv = 1;
        if (blk.smooth) {
            linv = *invmod(a.x[blk.offset + blk.npoints], N);
            y[blk.offset + blk.npoints] = linv;
        }
        for (int i = 0; i < blk.npoints; ++i) y[blk.offset + i] = mod(-mulmod(linv, a.x[blk.offset + i], N), N);
    }
    ClosureElement out{gi, {}};
    act(gi, y, out.x, N);
    return out;
}

ClosureElement ClosureGroup::kernel_generator(int i) const {
    ClosureElement e = identity();
    e.x[i] = mod(e.x[i] + p_, p_ * p_);
    return e;
}

std::vector<ClosureElement> ClosureGroup::generators() const {
    std::vector<ClosureElement> out;
    for (int g : G_.generators()) out.push_back(section(g));
    for (int i = 0; i < ncoords_; ++i) out.push_back(kernel_generator(i));
    return out;
}

std::vector<ClosureElement> ClosureGroup::elements(i64 limit) const {
    auto n = order();
    if (!n || *n > limit) fail(ErrorKind::Resource, "closure.enumerate", "closure has " + order_string() + " elements");
    std::vector<ClosureElement> out;
    out.reserve(*n);
    i64 fiber = *n / G_.order();
    for (int g = 0; g < G_.order(); ++g)
        for (i64 k = 0; k < fiber; ++k) {
            ClosureElement e = section(g);
            i64 r = k;
            for (int i = 0; i < ncoords_; ++i, r /= p_) e.x[i] += p_ * (r % p_);
            out.push_back(std::move(e));
        }
    return out;
}

std::string ClosureGroup::element_to_string(const ClosureElement& e) const {
    std::string s = "(" + G_.name(e.g) + ";";
    for (int i = 0; i < ncoords_; ++i) s += (i ? "," : "") + std::to_string(e.x[i]);
    return s + ")";
}

ClosureGroup::AxiomReport ClosureGroup::check_axioms(i64 pair_limit, i64 exhaustive_triples, i64 sampled_triples) const {
    AxiomReport rep;
    auto n = order();
    auto bad = [&](const std::string& why, const ClosureElement& a) {
        rep.ok = false;
        rep.failure = why + " at " + element_to_string(a);
    };
    ClosureElement e = identity();
    std::vector<ClosureElement> els;
    if (n && *n <= (i64(1) << 30) && *n * *n <= pair_limit) {
        els = elements(pair_limit);
        rep.exhaustive_pairs = true;
    } else {
        std::mt19937_64 rng(7);
        for (int t = 0; t < 2000; ++t) {
            ClosureElement a = section(static_cast<int>(rng() % G_.order()));
            for (int i = 0; i < ncoords_; ++i) a.x[i] += p_ * static_cast<i64>(rng() % p_);
            els.push_back(std::move(a));
        }
    }
    for (auto& a : els) {
        if (!(mul(a, e) == a) || !(mul(e, a) == a)) return bad("identity", a), rep;
        if (!(mul(a, inv(a)) == e) || !(mul(inv(a), a) == e)) return bad("inverse", a), rep;
        for (auto& b : els) {
            ++rep.pairs;
            if (!contains(mul(a, b))) return bad("closure", a), rep;
        }
    }
    i64 m = static_cast<i64>(els.size());
    auto assoc = [&](const ClosureElement& a, const ClosureElement& b, const ClosureElement& c) {
        ++rep.triples;
        return mul(mul(a, b), c) == mul(a, mul(b, c));
    };
    if (m * m * m <= exhaustive_triples) {
        rep.exhaustive_triples = rep.exhaustive_pairs;
        for (auto& a : els)
            for (auto& b : els)
                for (auto& c : els)
                    if (!assoc(a, b, c)) return bad("associativity", a), rep;
    } else {
        std::mt19937_64 rng(11);
        for (i64 t = 0; t < sampled_triples; ++t) {
            auto& a = els[rng() % m];
            auto& b = els[rng() % m];
            auto& c = els[rng() % m];
            if (!assoc(a, b, c)) return bad("associativity", a), rep;
        }
    }
    return rep;
}

bool ClosureGroup::kernel_is_elementary() const {
    // generators over the identity commute and have order p
    std::vector<ClosureElement> ks;
    for (int i = 0; i < ncoords_; ++i) ks.push_back(kernel_generator(i));
    ClosureElement e = identity();
    for (auto& a : ks) {
        ClosureElement x = e;
        for (i64 t = 0; t < p_; ++t) x = mul(x, a);
        if (!(x == e)) return false;
        for (auto& b : ks)
            if (!(mul(a, b) == mul(b, a))) return false;
    }
    // distinct coordinates give independent generators, so the kernel has order p^coordinates
    return true;
}

namespace {

// all 1-cocycles of G in a Z/p-module, as per-element value lists
std::vector<std::vector<Vec>> all_cocycles(const Rep& M, i64 budget) {
    const FiniteGroup& G = M.G;
    Mat Z = kernel_mod_p(coboundary_matrix(M, 1), M.p);
    int z = Z.cols;
    i64 count = 1;
    for (int i = 0; i < z; ++i) {
        count *= M.p;
        if (count > budget) fail(ErrorKind::Resource, "closure.catalog", "too many cocycles in the pair catalog");
    }
    std::vector<std::vector<Vec>> out;
    for (i64 k = 0; k < count; ++k) {
        Vec phi(Z.rows, 0);
        i64 r = k;
        for (int j = 0; j < z; ++j, r /= M.p) {
            i64 c = r % M.p;
            if (c)
                for (int i = 0; i < Z.rows; ++i) phi[i] = mod(phi[i] + c * Z(i, j), M.p);
        }
        std::vector<Vec> vals;
        for (int g = 0; g < G.order(); ++g) vals.push_back(cochain_value(M, 1, phi, {g}));
        out.push_back(std::move(vals));
    }
    return out;
}

std::vector<std::vector<int>> catalog_subgroups(const FiniteGroup& G, const ClosureOptions& opt) {
    if (opt.subgroups.empty()) return G.subgroups();
    std::vector<std::vector<int>> out;
    for (auto s : opt.subgroups) out.push_back(make_subgroup(G, s).embedding);
    return out;
}

std::vector<ClosureBlock> cyclotomic_blocks(const FiniteGroup& G, const CyclotomicModule& chi,
                                            const std::vector<int>& Hel, i64 budget) {
    Subgroup H = make_subgroup(G, Hel);
    Rep L1 = restrict_rep(chi.rep(G, 1), H);
    Rep Ind2 = induce(restrict_rep(chi.rep(G, 2), H), G, H);
    auto reps = right_coset_reps(G, Hel);
    int m = static_cast<int>(reps.size());
    std::vector<int> pos(G.order(), -1), coset(G.order(), -1);
    for (int i = 0; i < H.group.order(); ++i) pos[Hel[i]] = i;
    for (int i = 0; i < m; ++i)
        for (int h : Hel) coset[G.mul(h, reps[i])] = i;

    ClosureBlock base;
    base.subgroup = Hel;
    base.npoints = m;
    base.src.assign(G.order(), std::vector<int>(m, 0));
    base.coef.assign(G.order(), std::vector<i64>(m, 0));
    for (int g = 0; g < G.order(); ++g)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (Ind2.act[g](i, j)) {
                    base.src[g][i] = j;
                    base.coef[g][i] = Ind2.act[g](i, j);
                }
    std::vector<ClosureBlock> out;
    for (auto& c : all_cocycles(L1, budget)) {
        ClosureBlock b = base;
        b.cocycle.assign(static_cast<size_t>(G.order()) * m, 0);
        for (int g = 0; g < G.order(); ++g)
            for (int i = 0; i < m; ++i) {
                int x = G.mul(reps[i], g);
                int h = G.mul(x, G.inv(reps[coset[x]]));
                b.cocycle[static_cast<size_t>(g) * m + i] = c[pos[h]][0];
            }
        out.push_back(std::move(b));
    }
    return out;
}

// homomorphisms G -> F_p^x
std::vector<std::vector<i64>> unit_characters(const FiniteGroup& G, i64 p) {
    const auto& gens = G.generators();
    std::vector<std::vector<i64>> out;
    i64 total = 1;
    for (size_t i = 0; i < gens.size(); ++i) total *= p - 1;
    for (i64 k = 0; k < total; ++k) {
        std::vector<i64> img;
        i64 r = k;
        for (size_t i = 0; i < gens.size(); ++i, r /= p - 1) img.push_back(r % (p - 1) + 1);
        std::vector<i64> val(G.order(), 0);
        val[0] = 1;
        std::vector<int> queue{0};
        bool ok = true;
        for (size_t q = 0; q < queue.size() && ok; ++q) {
            int g = queue[q];
            for (size_t i = 0; i < gens.size(); ++i) {
                int h = G.mul(g, gens[i]);
                i64 v = mulmod(val[g], img[i], p);
                if (!val[h]) {
                    val[h] = v;
                    queue.push_back(h);
                } else if (val[h] != v) {
                    ok = false;
                }
            }
        }
        if (ok) out.push_back(val);
    }
    return out;
}

std::vector<ClosureBlock> smooth_blocks(const FiniteGroup& G, i64 p, const std::vector<int>& Hel, i64 budget) {
    // left cosets kH, numbered in order of first appearance
    std::vector<int> coset(G.order(), -1), reps;
    for (int k = 0; k < G.order(); ++k) {
        if (coset[k] >= 0) continue;
        int id = static_cast<int>(reps.size());
        reps.push_back(k);
        for (int h : Hel) coset[G.mul(k, h)] = id;
    }
    int m = static_cast<int>(reps.size());
    ClosureBlock base;
    base.subgroup = Hel;
    base.npoints = m;
    base.smooth = true;
    base.src.assign(G.order(), std::vector<int>(m, 0));
    base.coef.assign(G.order(), std::vector<i64>(m, 1));
    for (int g = 0; g < G.order(); ++g)
        for (int x = 0; x < m; ++x) base.src[g][x] = coset[G.mul(G.inv(g), reps[x])];

    std::vector<ClosureBlock> out;
    for (auto& lam : unit_characters(G, p)) {
        Rep M = Rep::trivial(G, p, 1, m);
        for (int g = 0; g < G.order(); ++g) {
            Mat A(m, m);
            for (int x = 0; x < m; ++x) A(x, base.src[g][x]) = lam[g];
            M.act[g] = A;
        }
        for (auto& t : all_cocycles(M, budget)) {
            ClosureBlock b = base;
            int w = b.width();
            b.cocycle.assign(static_cast<size_t>(G.order()) * w, 0);
            for (int g = 0; g < G.order(); ++g) {
                for (int x = 0; x < m; ++x) b.cocycle[static_cast<size_t>(g) * w + x] = t[g][x];
                b.cocycle[static_cast<size_t>(g) * w + m] = lam[g];
            }
            out.push_back(std::move(b));
        }
    }
    return out;
}

template <class F>
std::vector<ClosureBlock> build_catalog(const std::vector<std::vector<int>>& subs, int max_coords, F make) {
    // one task per subgroup, merged in subgroup order
    std::vector<std::future<std::vector<ClosureBlock>>> tasks;
    for (auto& H : subs) tasks.push_back(std::async(std::launch::async, make, H));
    std::vector<ClosureBlock> out;
    i64 coords = 0;
    std::optional<Error> err;
    for (auto& t : tasks) {
        try {
            for (auto& b : t.get()) {
                coords += b.width();
                out.push_back(std::move(b));
            }
        } catch (const Error& e) {
            if (!err) err = e;
        }
    }
    if (err) throw *err;
    if (coords > max_coords)
        fail(ErrorKind::Resource, "closure.budget",
             "pair catalog needs " + std::to_string(coords) + " coordinates; restrict the subgroups");
    return out;
}

}  // namespace

ClosureGroup sigma_cyclotomic(const FiniteGroup& G, const CyclotomicModule& chi, const ClosureOptions& opt) {
    if (!is_prime(chi.p)) fail(ErrorKind::Precondition, "closure.prime", "p must be prime");
    if (auto err = chi.check(G); !err.empty()) fail(ErrorKind::Precondition, "closure.character", err);
    auto subs = catalog_subgroups(G, opt);
    auto blocks = build_catalog(subs, opt.max_coordinates, [&](const std::vector<int>& H) {
        return cyclotomic_blocks(G, chi, H, opt.max_coordinates);
    });
    return ClosureGroup(G, chi.p, false, std::move(blocks));
}

ClosureGroup sigma_smooth(const FiniteGroup& G, i64 p, const ClosureOptions& opt) {
    if (!is_prime(p)) fail(ErrorKind::Precondition, "closure.prime", "p must be prime");
    auto subs = catalog_subgroups(G, opt);
    auto blocks = build_catalog(subs, opt.max_coordinates,
                                [&](const std::vector<int>& H) { return smooth_blocks(G, p, H, opt.max_coordinates); });
    return ClosureGroup(G, p, true, std::move(blocks));
}

FiniteGroup closure_as_group(const ClosureGroup& S, std::vector<ClosureElement>* elements) {
    auto els = S.elements(FiniteGroup::kMaxOrder);
    std::map<ClosureElement, int> idx;
    // identity first
    std::stable_partition(els.begin(), els.end(), [&](const ClosureElement& e) { return e == S.identity(); });
    for (size_t i = 0; i < els.size(); ++i) idx[els[i]] = static_cast<int>(i);
    int n = static_cast<int>(els.size());
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) {
        names.push_back(S.element_to_string(els[i]));
        for (int j = 0; j < n; ++j) t[i][j] = idx.at(S.mul(els[i], els[j]));
    }
    if (elements) *elements = els;
    return FiniteGroup::from_table(std::move(t), std::move(names));
}

LevelOneReport verify_level_one_lifting(const ClosureGroup& S, const CyclotomicModule& chi, i64 samples) {
    if (S.smooth()) fail(ErrorKind::Precondition, "closure.kind", "level-one lifting applies to the cyclotomic closure");
    const FiniteGroup& G = S.base();
    i64 p = S.p(), N = p * p;
    LevelOneReport rep;
    for (size_t bi = 0; bi < S.blocks().size(); ++bi) {
        const auto& b = S.blocks()[bi];
        LiftWitness w;
        w.block = static_cast<int>(bi);
        w.coordinate = b.offset;  // coset of the identity
        std::vector<int> pos(G.order(), -1);
        for (size_t i = 0; i < b.subgroup.size(); ++i) pos[b.subgroup[i]] = static_cast<int>(i);
        // the pair's own cocycle c_h on H, read off at the identity coset
        auto c = [&](int h) { return b.cocycle[static_cast<size_t>(h) * b.npoints]; };
        auto lift = [&](const ClosureElement& e) { return e.x[w.coordinate]; };
        bool ok = true;
        auto check = [&](const ClosureElement& a, const ClosureElement& bb) {
            ++w.products_checked;
            if (lift(a) % p != c(a.g)) ok = false;
            i64 lhs = lift(S.mul(a, bb));
            i64 rhs = mod(lift(a) + mulmod(chi.chi[a.g], lift(bb), N), N);
            if (lhs != rhs) ok = false;
        };
        i64 fiber_log = S.coordinates();
        i64 pre = static_cast<i64>(b.subgroup.size());
        bool small = true;
        for (i64 i = 0; i < fiber_log && small; ++i) {
            pre *= p;
            if (pre > 64) small = false;
        }
        if (small) {
            w.exhaustive = true;
            std::vector<ClosureElement> els;
            for (auto& e : S.elements(1 << 20))
                if (pos[e.g] >= 0) els.push_back(e);
            for (auto& a : els)
                for (auto& x : els) check(a, x);
        } else {
            std::mt19937_64 rng(1000 + bi);
            auto draw = [&]() {
                ClosureElement e = S.section(b.subgroup[rng() % b.subgroup.size()]);
                for (auto& v : e.x) v += p * static_cast<i64>(rng() % p);
                return e;
            };
            for (i64 t = 0; t < samples; ++t) check(draw(), draw());
        }
        w.lifts = ok;
        rep.ok = rep.ok && ok;
        rep.witnesses.push_back(w);
    }
    return rep;
}

CyclotomicReport is_cyclotomic_at_level(const FiniteGroup& G, const CyclotomicModule& chi) {
    if (auto err = chi.check(G); !err.empty()) fail(ErrorKind::Precondition, "closure.character", err);
    CyclotomicReport out;
    Rep L2 = chi.rep(G, 2);
    for (auto& Hel : G.subgroups()) {
        Subgroup H = make_subgroup(G, Hel);
        Rep M2 = restrict_rep(L2, H);
        Rep M1 = reduce_rep(M2, 1);
        Cohomology C2(M2, 1), C1(M1, 1);
        SubgroupLifting row;
        row.subgroup = Hel;
        row.h1_mod_p = C1.num_generators();
        std::vector<Vec> rows;
        for (auto& z : C2.representatives()) {
            Vec r = z;
            for (auto& v : r) v = mod(v, chi.p);
            rows.push_back(C1.coordinates(r));
        }
        if (!rows.empty() && !rows[0].empty()) row.image_rank = rank_mod_p(Mat::from_rows(rows), chi.p);
        row.surjective = row.image_rank == row.h1_mod_p;
        out.holds = out.holds && row.surjective;
        out.table.push_back(std::move(row));
    }
    return out;
}

IteratedClosure sigma_iterate(const FiniteGroup& G, const CyclotomicModule& chi, int levels, const ClosureOptions& opt) {
    if (levels < 0 || levels > 2) fail(ErrorKind::Unsupported, "closure.iterate", "iteration is capped at two steps");
    IteratedClosure out;
    out.orders.push_back(std::to_string(G.order()));
    out.log_p_fibers.push_back(0);
    if (levels == 0) return out;
    ClosureGroup S1 = sigma_cyclotomic(G, chi, opt);
    out.orders.push_back(S1.order_string());
    out.log_p_fibers.push_back(S1.coordinates());
    if (levels == 1) return out;
    auto n = S1.order();
    if (!n || *n > FiniteGroup::kMaxOrder)
        fail(ErrorKind::Resource, "closure.iterate", "first closure too large to iterate");
    std::vector<ClosureElement> els;
    FiniteGroup G1 = closure_as_group(S1, &els);
    CyclotomicModule chi1{chi.p, {}};
    for (auto& e : els) chi1.chi.push_back(chi.chi[e.g]);
    ClosureOptions opt1;
    opt1.max_coordinates = opt.max_coordinates;
    ClosureGroup S2 = sigma_cyclotomic(G1, chi1, opt1);
    out.orders.push_back(S2.order_string());
    out.log_p_fibers.push_back(S2.coordinates());
    return out;
}

}  // namespace wl
