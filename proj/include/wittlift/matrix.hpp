#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wittlift/arith.hpp"

namespace wl {

using Vec = std::vector<i64>;

// Dense row-major integer matrix; the modulus is supplied by each operation.
struct Mat {
    int rows = 0, cols = 0;
    std::vector<i64> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
    static Mat identity(int n, i64 N = 0);
    static Mat from_rows(const std::vector<Vec>& rows);

    i64& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    i64 operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Vec column(int j) const;
    Vec row(int i) const;
    bool is_zero() const;
    std::string to_string() const;
};

Mat matmul(const Mat& A, const Mat& B, i64 N);
Mat matadd(const Mat& A, const Mat& B, i64 N);
Mat matsub(const Mat& A, const Mat& B, i64 N);
Mat matscale(const Mat& A, i64 c, i64 N);
Mat reduce(const Mat& A, i64 N);
Mat transpose(const Mat& A);
Vec matvec(const Mat& A, const Vec& x, i64 N);
Mat kron(const Mat& A, const Mat& B, i64 N);
Mat block_diag(const Mat& A, const Mat& B);
// Inverse over Z/p^k; nullopt if singular.
std::optional<Mat> inverse(const Mat& A, i64 p, int k);
bool is_upper_triangular(const Mat& A);

// Smith normal form over the local ring Z/p^k: U A V = diag(p^{v_0}, ..., p^{v_{r-1}}, 0...).
// Row operations are logged rather than stored as a dense U so that tall
// coboundary matrices stay cheap.
class Smith {
public:
    Smith(const Mat& A, i64 p, int k, bool track_uinv = false);

    i64 p() const { return p_; }
    int k() const { return k_; }
    i64 modulus() const { return N_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    // number of nonzero diagonal entries
    int rank() const { return static_cast<int>(vals_.size()); }
    const std::vector<int>& vals() const { return vals_; }
    const Mat& V() const { return V_; }
    const Mat& Vinv() const { return Vinv_; }
    const Mat& Uinv() const { return Uinv_; }

    Vec apply_left(Vec b) const;
    std::optional<Vec> solve(const Vec& b) const;
    // Generators of ker A as columns, with the exponent e of each generator's order p^e.
    std::pair<Mat, std::vector<int>> kernel() const;
    // log_p |ker A|
    int kernel_log_size() const;

private:
    struct PivotOps {
        int swap_with;
        i64 unit;
        std::vector<std::pair<int, i64>> elim;  // row_i -= m * row_t
    };

    i64 p_, N_;
    int k_, rows_, cols_;
    std::vector<int> vals_;
    std::vector<PivotOps> ops_;
    Mat V_, Vinv_, Uinv_;
};

int rank_mod_p(const Mat& A, i64 p);
// Basis of the right kernel over F_p, as columns.
Mat kernel_mod_p(const Mat& A, i64 p);

// Subquotient ker(d_out) / im(d_in) of free Z/p^k-modules.
class Subquotient {
public:
    Subquotient(const Mat& d_out, const Mat& d_in, i64 p, int k);

    // exponents e > 0 of the cyclic factors Z/p^e
    const std::vector<int>& factors() const { return factors_; }
    // F_p-dimension of H/pH (the number of cyclic factors)
    int num_generators() const { return static_cast<int>(factors_.size()); }
    int log_size() const;
    // representative elements of C^n for each cyclic factor
    const std::vector<Vec>& representatives() const { return reps_; }
    // coordinates of a cycle z in the factor decomposition (each mod p^e)
    Vec coordinates(const Vec& z) const;
    bool is_boundary(const Vec& z) const;
    bool is_cycle(const Vec& z) const;

private:
    Vec kernel_coords(const Vec& z) const;

    i64 p_, N_;
    int k_;
    Mat d_out_;
    Smith out_;
    std::vector<int> gen_index_;  // kernel generator -> column of V
    std::vector<int> gen_exp_;    // order exponent of kernel generator
    std::optional<Smith> rel_;
    std::vector<int> factor_rows_;
    std::vector<int> factors_;
    std::vector<Vec> reps_;
};

}  // namespace wl
