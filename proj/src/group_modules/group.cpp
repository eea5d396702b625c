#include "wittlift/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "wittlift/errors.hpp"

namespace wl {

namespace {

std::string cycle_name(const std::vector<int>& perm) {
    std::ostringstream os;
    std::vector<bool> seen(perm.size(), false);
    for (size_t i = 0; i < perm.size(); ++i) {
        if (seen[i] || perm[i] == static_cast<int>(i)) continue;
        os << '(';
        size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            os << (first ? "" : " ") << j + 1;
            first = false;
            j = static_cast<size_t>(perm[j]);
        }
        os << ')';
    }
    std::string s = os.str();
    return s.empty() ? "()" : s;
}

}  // namespace

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table, std::vector<std::string> names) {
    int n = static_cast<int>(table.size());
    if (n == 0) fail(ErrorKind::Structural, "group.empty", "group table is empty");
    if (n > kMaxOrder) fail(ErrorKind::Resource, "group.too_large", "groups are materialized up to order 512");
    FiniteGroup G;
    G.n_ = n;
    G.table_.reserve(static_cast<size_t>(n) * n);
    for (auto& row : table) {
        if (static_cast<int>(row.size()) != n) fail(ErrorKind::Structural, "group.table_shape", "table must be square");
        for (int v : row) {
            if (v < 0 || v >= n) fail(ErrorKind::Structural, "group.table_range", "table entry out of range");
            G.table_.push_back(v);
        }
    }
    for (int a = 0; a < n; ++a)
        if (G.mul(0, a) != a || G.mul(a, 0) != a)
            fail(ErrorKind::Structural, "group.identity", "element 0 must be the identity");
    if (names.empty())
        for (int a = 0; a < n; ++a) names.push_back(std::to_string(a));
    if (static_cast<int>(names.size()) != n) fail(ErrorKind::Structural, "group.names", "one name per element");
    G.names_ = std::move(names);
    G.inv_.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (G.mul(a, b) == 0) {
                G.inv_[a] = b;
                break;
            }
    std::string err = G.check_axioms();
    if (!err.empty()) fail(ErrorKind::Structural, "group.axioms", err);
    G.finish();
    return G;
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<std::vector<int>>& gens) {
    size_t m = gens.empty() ? 0 : gens[0].size();
    for (auto& g : gens) {
        if (g.size() != m) fail(ErrorKind::Structural, "group.perm_degree", "permutations of different degrees");
        std::vector<int> s = g;
        std::sort(s.begin(), s.end());
        for (size_t i = 0; i < m; ++i)
            if (s[i] != static_cast<int>(i)) fail(ErrorKind::Structural, "group.perm", "not a permutation");
    }
    std::vector<int> id(m);
    std::iota(id.begin(), id.end(), 0);
    std::vector<std::vector<int>> elems{id};
    std::map<std::vector<int>, int> index{{id, 0}};
    auto compose = [&](const std::vector<int>& a, const std::vector<int>& b) {
        // apply a then b
        std::vector<int> c(m);
        for (size_t i = 0; i < m; ++i) c[i] = b[a[i]];
        return c;
    };
    for (size_t q = 0; q < elems.size(); ++q)
        for (auto& g : gens) {
            auto c = compose(elems[q], g);
            if (!index.count(c)) {
                if (static_cast<int>(elems.size()) >= kMaxOrder)
                    fail(ErrorKind::Resource, "group.too_large", "groups are materialized up to order 512");
                index[c] = static_cast<int>(elems.size());
                elems.push_back(c);
            }
        }
    int n = static_cast<int>(elems.size());
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    std::vector<std::string> names;
    for (int a = 0; a < n; ++a) {
        names.push_back(cycle_name(elems[a]));
        for (int b = 0; b < n; ++b) table[a][b] = index.at(compose(elems[a], elems[b]));
    }
    return from_table(std::move(table), std::move(names));
}

FiniteGroup FiniteGroup::cyclic(int n) {
    if (n < 1) fail(ErrorKind::Structural, "group.order", "cyclic group order must be >= 1");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return from_table(std::move(t));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& A, const FiniteGroup& B) {
    int n = A.order() * B.order();
    if (n > kMaxOrder) fail(ErrorKind::Resource, "group.too_large", "groups are materialized up to order 512");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    std::vector<std::string> names;
    int m = B.order();
    for (int x = 0; x < n; ++x) {
        names.push_back("(" + A.name(x / m) + "," + B.name(x % m) + ")");
        for (int y = 0; y < n; ++y) t[x][y] = A.mul(x / m, y / m) * m + B.mul(x % m, y % m);
    }
    return from_table(std::move(t), std::move(names));
}

FiniteGroup FiniteGroup::dihedral(int n) {
    if (n < 1) fail(ErrorKind::Structural, "group.order", "dihedral parameter must be >= 1");
    if (n == 1) return cyclic(2);
    if (n == 2) return direct_product(cyclic(2), cyclic(2));
    std::vector<int> r(n), s(n);
    for (int i = 0; i < n; ++i) {
        r[i] = (i + 1) % n;
        s[i] = (n - i) % n;
    }
    return from_permutations({r, s});
}

FiniteGroup FiniteGroup::quaternion() {
    // element 4*s + u is (-1)^s * u with u in {1,i,j,k}
    static const int unit[4][4] = {{0, 1, 2, 3}, {1, 4, 3, 6}, {2, 7, 4, 1}, {3, 2, 5, 4}};
    // entries >= 4 carry a sign; 4 = -1, 5 = -i, 6 = -j, 7 = -k
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            int e = unit[a % 4][b % 4];
            int sign = (a / 4 + b / 4 + e / 4) % 2;
            t[a][b] = 4 * sign + e % 4;
        }
    return from_table(std::move(t), {"1", "i", "j", "k", "-1", "-i", "-j", "-k"});
}

FiniteGroup FiniteGroup::symmetric(int n) {
    if (n < 1) fail(ErrorKind::Structural, "group.order", "symmetric degree must be >= 1");
    if (n == 1) return trivial();
    std::vector<int> t(n), c(n);
    std::iota(t.begin(), t.end(), 0);
    std::swap(t[0], t[1]);
    for (int i = 0; i < n; ++i) c[i] = (i + 1) % n;
    return from_permutations({t, c});
}

void FiniteGroup::finish() {
    memo_ = std::make_shared<Memo>();
    // greedy generating set: take the element that enlarges the closure most
    std::vector<int> cur{0};
    gens_.clear();
    while (static_cast<int>(cur.size()) < n_) {
        int best = -1;
        size_t best_size = 0;
        for (int g = 1; g < n_; ++g) {
            if (std::binary_search(cur.begin(), cur.end(), g)) continue;
            auto gs = gens_;
            gs.push_back(g);
            size_t s = closure(gs).size();
            if (s > best_size) {
                best_size = s;
                best = g;
            }
        }
        gens_.push_back(best);
        cur = closure(gens_);
    }
}

int FiniteGroup::pow(int a, i64 e) const {
    int ord = element_order(a);
    e = mod(e, ord);
    int r = 0;
    for (i64 i = 0; i < e; ++i) r = mul(r, a);
    return r;
}

int FiniteGroup::element_order(int a) const {
    int k = 1, x = a;
    while (x != 0) {
        x = mul(x, a);
        ++k;
    }
    return k;
}

int FiniteGroup::find(const std::string& name) const {
    for (int a = 0; a < n_; ++a)
        if (names_[a] == name) return a;
    fail(ErrorKind::Parse, "group.element", "unknown group element: " + name);
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < a; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

std::vector<int> FiniteGroup::closure(const std::vector<int>& gens) const {
    std::vector<char> in(n_, 0);
    std::vector<int> q{0};
    in[0] = 1;
    for (size_t i = 0; i < q.size(); ++i)
        for (int g : gens) {
            int x = mul(q[i], g);
            if (!in[x]) {
                in[x] = 1;
                q.push_back(x);
            }
        }
    std::sort(q.begin(), q.end());
    return q;
}

bool FiniteGroup::is_subgroup(const std::vector<int>& elems) const {
    if (elems.empty()) return false;
    std::vector<char> in(n_, 0);
    for (int a : elems) {
        if (a < 0 || a >= n_) return false;
        in[a] = 1;
    }
    if (!in[0]) return false;
    for (int a : elems)
        for (int b : elems)
            if (!in[mul(a, inv(b))]) return false;
    return true;
}

const std::vector<std::vector<int>>& FiniteGroup::subgroups() const {
    std::call_once(memo_->once, [this] {
        if (n_ > 256) fail(ErrorKind::Resource, "group.subgroups", "subgroup lattice limited to order 256");
        std::set<std::vector<int>> found{{0}};
        std::vector<std::vector<int>> queue{{0}};
        for (size_t i = 0; i < queue.size(); ++i) {
            auto S = queue[i];
            for (int g = 0; g < n_; ++g) {
                if (std::binary_search(S.begin(), S.end(), g)) continue;
                auto gens = S;
                gens.push_back(g);
                auto T = closure(gens);
                if (found.insert(T).second) queue.push_back(T);
            }
        }
        memo_->subgroups.assign(found.begin(), found.end());
        std::stable_sort(memo_->subgroups.begin(), memo_->subgroups.end(),
                         [](auto& a, auto& b) { return a.size() < b.size(); });
    });
    return memo_->subgroups;
}

std::vector<std::vector<int>> FiniteGroup::table() const {
    std::vector<std::vector<int>> t(n_, std::vector<int>(n_));
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) t[a][b] = mul(a, b);
    return t;
}

std::string FiniteGroup::check_axioms() const {
    for (int a = 0; a < n_; ++a) {
        if (inv_[a] < 0) return "element " + names_[a] + " has no inverse";
        std::vector<char> seen(n_, 0);
        for (int b = 0; b < n_; ++b) {
            if (seen[mul(a, b)]) return "row " + names_[a] + " is not a permutation";
            seen[mul(a, b)] = 1;
        }
    }
    if (n_ <= 256)
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                for (int c = 0; c < n_; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c))) return "multiplication is not associative";
    return "";
}

Subgroup make_subgroup(const FiniteGroup& G, std::vector<int> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    if (!G.is_subgroup(elems)) fail(ErrorKind::Structural, "group.not_subgroup", "elements do not form a subgroup");
    int m = static_cast<int>(elems.size());
    std::vector<int> pos(G.order(), -1);
    for (int i = 0; i < m; ++i) pos[elems[i]] = i;
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    std::vector<std::string> names;
    for (int i = 0; i < m; ++i) {
        names.push_back(G.name(elems[i]));
        for (int j = 0; j < m; ++j) t[i][j] = pos[G.mul(elems[i], elems[j])];
    }
    return Subgroup{FiniteGroup::from_table(std::move(t), std::move(names)), elems};
}

std::vector<int> right_coset_reps(const FiniteGroup& G, const std::vector<int>& H) {
    std::vector<char> covered(G.order(), 0);
    std::vector<int> reps;
    for (int t = 0; t < G.order(); ++t) {
        if (covered[t]) continue;
        reps.push_back(t);
        for (int h : H) covered[G.mul(h, t)] = 1;
    }
    return reps;
}

}  // namespace wl
