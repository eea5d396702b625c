#include "wittlift/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "wittlift/errors.hpp"

namespace wl {

Mat Mat::identity(int n, i64) {
    Mat I(n, n);
    for (int i = 0; i < n; ++i) I(i, i) = 1;
    return I;
}

Mat Mat::from_rows(const std::vector<Vec>& rs) {
    if (rs.empty()) return Mat();
    Mat M(static_cast<int>(rs.size()), static_cast<int>(rs[0].size()));
    for (int i = 0; i < M.rows; ++i) {
        if (static_cast<int>(rs[i].size()) != M.cols)
            fail(ErrorKind::Structural, "matrix.ragged", "rows have different lengths");
        for (int j = 0; j < M.cols; ++j) M(i, j) = rs[i][j];
    }
    return M;
}

Vec Mat::column(int j) const {
    Vec v(rows);
    for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
}

Vec Mat::row(int i) const { return Vec(a.begin() + static_cast<long>(i) * cols, a.begin() + static_cast<long>(i + 1) * cols); }

bool Mat::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](i64 v) { return v == 0; });
}

std::string Mat::to_string() const {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < rows; ++i) {
        os << (i ? "," : "") << '[';
        for (int j = 0; j < cols; ++j) os << (j ? "," : "") << (*this)(i, j);
        os << ']';
    }
    os << ']';
    return os.str();
}

Mat matmul(const Mat& A, const Mat& B, i64 N) {
    if (A.cols != B.rows) fail(ErrorKind::Structural, "matrix.shape", "matmul shape mismatch");
    Mat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int l = 0; l < A.cols; ++l) {
            i64 x = A(i, l);
            if (x == 0) continue;
            const i64* brow = &B.a[static_cast<size_t>(l) * B.cols];
            i64* crow = &C.a[static_cast<size_t>(i) * C.cols];
            for (int j = 0; j < B.cols; ++j) crow[j] = (crow[j] + x * brow[j]) % N;
        }
    return reduce(C, N);
}

Mat matadd(const Mat& A, const Mat& B, i64 N) {
    if (A.rows != B.rows || A.cols != B.cols) fail(ErrorKind::Structural, "matrix.shape", "matadd shape mismatch");
    Mat C(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = mod(A.a[i] + B.a[i], N);
    return C;
}

Mat matsub(const Mat& A, const Mat& B, i64 N) {
    if (A.rows != B.rows || A.cols != B.cols) fail(ErrorKind::Structural, "matrix.shape", "matsub shape mismatch");
    Mat C(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = mod(A.a[i] - B.a[i], N);
    return C;
}

Mat matscale(const Mat& A, i64 c, i64 N) {
    Mat C = A;
    for (auto& v : C.a) v = mod(v * mod(c, N), N);
    return C;
}

Mat reduce(const Mat& A, i64 N) {
    Mat C = A;
    for (auto& v : C.a) v = mod(v, N);
    return C;
}

Mat transpose(const Mat& A) {
    Mat T(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
    return T;
}

Vec matvec(const Mat& A, const Vec& x, i64 N) {
    if (A.cols != static_cast<int>(x.size())) fail(ErrorKind::Structural, "matrix.shape", "matvec shape mismatch");
    Vec y(A.rows, 0);
    for (int i = 0; i < A.rows; ++i) {
        i64 s = 0;
        const i64* r = &A.a[static_cast<size_t>(i) * A.cols];
        for (int j = 0; j < A.cols; ++j)
            if (x[j]) s = (s + r[j] * x[j]) % N;
        y[i] = mod(s, N);
    }
    return y;
}

Mat kron(const Mat& A, const Mat& B, i64 N) {
    Mat C(A.rows * B.rows, A.cols * B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j)
            for (int k = 0; k < B.rows; ++k)
                for (int l = 0; l < B.cols; ++l) C(i * B.rows + k, j * B.cols + l) = mod(A(i, j) * B(k, l), N);
    return C;
}

Mat block_diag(const Mat& A, const Mat& B) {
    Mat C(A.rows + B.rows, A.cols + B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) C(i, j) = A(i, j);
    for (int i = 0; i < B.rows; ++i)
        for (int j = 0; j < B.cols; ++j) C(A.rows + i, A.cols + j) = B(i, j);
    return C;
}

std::optional<Mat> inverse(const Mat& A, i64 p, int k) {
    if (A.rows != A.cols) return std::nullopt;
    i64 N = ipow(p, k);
    int n = A.rows;
    Mat M = reduce(A, N), I = Mat::identity(n);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (M(r, c) % p != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return std::nullopt;
        for (int j = 0; j < n; ++j) {
            std::swap(M(c, j), M(piv, j));
            std::swap(I(c, j), I(piv, j));
        }
        i64 u = *invmod(M(c, c), N);
        for (int j = 0; j < n; ++j) {
            M(c, j) = M(c, j) * u % N;
            I(c, j) = I(c, j) * u % N;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || M(r, c) == 0) continue;
            i64 m = M(r, c);
            for (int j = 0; j < n; ++j) {
                M(r, j) = mod(M(r, j) - m * M(c, j), N);
                I(r, j) = mod(I(r, j) - m * I(c, j), N);
            }
        }
    }
    return I;
}

bool is_upper_triangular(const Mat& A) {
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < std::min(i, A.cols); ++j)
            if (A(i, j) != 0) return false;
    return true;
}

Smith::Smith(const Mat& A, i64 p, int k, bool track_uinv)
    : p_(p), N_(ipow(p, k)), k_(k), rows_(A.rows), cols_(A.cols) {
    Mat W = reduce(A, N_);
    V_ = Mat::identity(cols_);
    Vinv_ = Mat::identity(cols_);
    if (track_uinv) Uinv_ = Mat::identity(rows_);
    std::vector<i64> ppow(k + 1, 1);
    for (int i = 1; i <= k; ++i) ppow[i] = ppow[i - 1] * p;
    int lim = std::min(rows_, cols_);
    for (int t = 0; t < lim; ++t) {
        int bi = -1, bj = -1, bv = k;
        for (int i = t; i < rows_ && bv > 0; ++i) {
            const i64* r = &W.a[static_cast<size_t>(i) * cols_];
            for (int j = t; j < cols_; ++j) {
                if (r[j] == 0) continue;
                int v = valuation(r[j], p, k);
                if (v < bv) {
                    bv = v;
                    bi = i;
                    bj = j;
                    if (v == 0) break;
                }
            }
        }
        if (bi < 0) break;
        PivotOps op{bi, 1, {}};
        if (bi != t) {
            for (int j = 0; j < cols_; ++j) std::swap(W(t, j), W(bi, j));
            if (track_uinv)
                for (int i = 0; i < rows_; ++i) std::swap(Uinv_(i, t), Uinv_(i, bi));
        }
        if (bj != t) {
            for (int i = 0; i < rows_; ++i) std::swap(W(i, t), W(i, bj));
            for (int i = 0; i < cols_; ++i) std::swap(V_(i, t), V_(i, bj));
            for (int j = 0; j < cols_; ++j) std::swap(Vinv_(t, j), Vinv_(bj, j));
        }
        i64 u = W(t, t) / ppow[bv];
        i64 uinv = *invmod(u, N_);
        op.unit = uinv;
        for (int j = t; j < cols_; ++j) W(t, j) = W(t, j) * uinv % N_;
        if (track_uinv)
            for (int i = 0; i < rows_; ++i) Uinv_(i, t) = Uinv_(i, t) * u % N_;
        const i64* prow = &W.a[static_cast<size_t>(t) * cols_];
        for (int i = t + 1; i < rows_; ++i) {
            i64* r = &W.a[static_cast<size_t>(i) * cols_];
            if (r[t] == 0) continue;
            i64 m = r[t] / ppow[bv];
            for (int j = t; j < cols_; ++j)
                if (prow[j]) r[j] = mod(r[j] - m * prow[j], N_);
            op.elim.emplace_back(i, m);
            if (track_uinv)
                for (int x = 0; x < rows_; ++x) Uinv_(x, t) = (Uinv_(x, t) + m * Uinv_(x, i)) % N_;
        }
        for (int j = t + 1; j < cols_; ++j) {
            if (W(t, j) == 0) continue;
            i64 c = W(t, j) / ppow[bv];
            W(t, j) = 0;
            for (int i = 0; i < cols_; ++i)
                if (V_(i, t)) V_(i, j) = mod(V_(i, j) - c * V_(i, t), N_);
            for (int x = 0; x < cols_; ++x)
                if (Vinv_(j, x)) Vinv_(t, x) = (Vinv_(t, x) + c * Vinv_(j, x)) % N_;
        }
        vals_.push_back(bv);
        ops_.push_back(std::move(op));
    }
}

Vec Smith::apply_left(Vec b) const {
    for (size_t t = 0; t < ops_.size(); ++t) {
        const auto& op = ops_[t];
        std::swap(b[t], b[op.swap_with]);
        b[t] = mod(b[t] * op.unit, N_);
        if (b[t] == 0) continue;
        for (auto [i, m] : op.elim) b[i] = mod(b[i] - m * b[t], N_);
    }
    return b;
}

std::optional<Vec> Smith::solve(const Vec& b) const {
    if (static_cast<int>(b.size()) != rows_) fail(ErrorKind::Structural, "matrix.shape", "solve shape mismatch");
    Vec c = apply_left(reduce(Mat::from_rows({b}), N_).row(0));
    Vec y(cols_, 0);
    for (int t = 0; t < rank(); ++t) {
        i64 pv = ipow(p_, vals_[t]);
        if (c[t] % pv != 0) return std::nullopt;
        y[t] = c[t] / pv;
    }
    for (int i = rank(); i < rows_; ++i)
        if (c[i] != 0) return std::nullopt;
    return matvec(V_, y, N_);
}

std::pair<Mat, std::vector<int>> Smith::kernel() const {
    std::vector<Vec> gens;
    std::vector<int> exps;
    for (int t = 0; t < rank(); ++t) {
        if (vals_[t] == 0) continue;
        Vec g = V_.column(t);
        i64 s = ipow(p_, k_ - vals_[t]);
        for (auto& x : g) x = x * s % N_;
        gens.push_back(g);
        exps.push_back(vals_[t]);
    }
    for (int j = rank(); j < cols_; ++j) {
        gens.push_back(V_.column(j));
        exps.push_back(k_);
    }
    Mat K(cols_, static_cast<int>(gens.size()));
    for (int j = 0; j < K.cols; ++j)
        for (int i = 0; i < cols_; ++i) K(i, j) = gens[j][i];
    return {K, exps};
}

int Smith::kernel_log_size() const {
    int s = (cols_ - rank()) * k_;
    for (int v : vals_) s += v;
    return s;
}

int rank_mod_p(const Mat& A, i64 p) { return Smith(A, p, 1).rank(); }

Mat kernel_mod_p(const Mat& A, i64 p) { return Smith(A, p, 1).kernel().first; }

Subquotient::Subquotient(const Mat& d_out, const Mat& d_in, i64 p, int k)
    : p_(p), N_(ipow(p, k)), k_(k), d_out_(d_out), out_(d_out, p, k) {
    for (int t = 0; t < out_.rank(); ++t)
        if (out_.vals()[t] > 0) {
            gen_index_.push_back(t);
            gen_exp_.push_back(out_.vals()[t]);
        }
    for (int j = out_.rank(); j < d_out.cols; ++j) {
        gen_index_.push_back(j);
        gen_exp_.push_back(k);
    }
    int ng = static_cast<int>(gen_index_.size());
    if (ng == 0) return;
    int extra = 0;
    for (int e : gen_exp_)
        if (e < k) ++extra;
    Mat R(ng, d_in.cols + extra);
    for (int j = 0; j < d_in.cols; ++j) {
        Vec c = kernel_coords(d_in.column(j));
        for (int g = 0; g < ng; ++g) R(g, j) = c[g];
    }
    int col = d_in.cols;
    for (int g = 0; g < ng; ++g)
        if (gen_exp_[g] < k) R(g, col++) = ipow(p, gen_exp_[g]);
    rel_.emplace(R, p, k, true);
    auto [K, exps] = out_.kernel();
    for (int i = 0; i < ng; ++i) {
        int e = i < rel_->rank() ? rel_->vals()[i] : k;
        if (e == 0) continue;
        factor_rows_.push_back(i);
        factors_.push_back(e);
        Vec z(d_out.cols, 0);
        for (int g = 0; g < ng; ++g) {
            i64 c = rel_->Uinv()(g, i);
            if (!c) continue;
            for (int x = 0; x < d_out.cols; ++x) z[x] = (z[x] + c * K(x, g)) % N_;
        }
        reps_.push_back(z);
    }
}

Vec Subquotient::kernel_coords(const Vec& z) const {
    Vec y = matvec(out_.Vinv(), z, N_);
    Vec c(gen_index_.size());
    for (size_t g = 0; g < gen_index_.size(); ++g) {
        int t = gen_index_[g];
        if (t < out_.rank())
            c[g] = y[t] / ipow(p_, k_ - out_.vals()[t]);
        else
            c[g] = y[t];
    }
    return c;
}

int Subquotient::log_size() const {
    int s = 0;
    for (int e : factors_) s += e;
    return s;
}

Vec Subquotient::coordinates(const Vec& z) const {
    if (!rel_) return {};
    Vec c = rel_->apply_left(kernel_coords(reduce(Mat::from_rows({z}), N_).row(0)));
    Vec out;
    for (size_t f = 0; f < factors_.size(); ++f) out.push_back(mod(c[factor_rows_[f]], ipow(p_, factors_[f])));
    return out;
}

bool Subquotient::is_cycle(const Vec& z) const {
    Vec y = matvec(d_out_, z, N_);
    return std::all_of(y.begin(), y.end(), [](i64 v) { return v == 0; });
}

bool Subquotient::is_boundary(const Vec& z) const {
    if (!is_cycle(z)) return false;
    Vec c = coordinates(z);
    return std::all_of(c.begin(), c.end(), [](i64 v) { return v == 0; });
}

}  // namespace wl
