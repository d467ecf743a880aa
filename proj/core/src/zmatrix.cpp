#include "cmlat/zmatrix.hpp"

#include <algorithm>
#include <sstream>

namespace cmlat {

ZMatrix ZMatrix::identity(std::size_t n) {
    ZMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

ZMatrix ZMatrix::from_rows(const std::vector<ZVec>& rows, std::size_t cols) {
    ZMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw error("from_rows: ragged row");
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

ZVec ZMatrix::row(std::size_t i) const {
    ZVec v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = at(i, j);
    return v;
}

void ZMatrix::set_row(std::size_t i, const ZVec& v) {
    if (v.size() != cols_) throw error("set_row: size mismatch");
    for (std::size_t j = 0; j < cols_; ++j) at(i, j) = v[j];
}

void ZMatrix::append_row(const ZVec& v) {
    if (rows_ == 0 && cols_ == 0) cols_ = v.size();
    if (v.size() != cols_) throw error("append_row: size mismatch");
    a_.insert(a_.end(), v.begin(), v.end());
    ++rows_;
}

ZMatrix ZMatrix::transpose() const {
    ZMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

ZMatrix ZMatrix::operator*(const ZMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw error("matrix product: shape mismatch");
    ZMatrix p(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const mpz_class& x = at(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                p.at(i, j) += x * rhs.at(k, j);
        }
    return p;
}

bool ZMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const mpz_class& x) { return x == 0; });
}

ZVec operator+(const ZVec& a, const ZVec& b) {
    if (a.size() != b.size()) throw error("vector add: size mismatch");
    ZVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

ZVec operator-(const ZVec& a, const ZVec& b) {
    if (a.size() != b.size()) throw error("vector sub: size mismatch");
    ZVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

ZVec operator*(const mpz_class& c, const ZVec& v) {
    ZVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

ZVec negate(const ZVec& v) {
    ZVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
    return r;
}

bool is_zero(const ZVec& v) {
    return std::all_of(v.begin(), v.end(), [](const mpz_class& x) { return x == 0; });
}

ZVec mul_row(const ZVec& x, const ZMatrix& m) {
    if (x.size() != m.rows()) throw error("mul_row: size mismatch");
    ZVec r(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) r[j] += x[i] * m.at(i, j);
    }
    return r;
}

namespace {

mpz_class fdiv(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/* quotient with the remainder balanced into [-|b|/2, |b|/2); keeps entry
 * growth under control during elimination.  The floor remainder has the
 * sign of b, so the correction is +1 in both cases. */
mpz_class bdiv(const mpz_class& a, const mpz_class& b) {
    mpz_class q = fdiv(a, b);
    mpz_class r = a - q * b;
    if (2 * abs(r) > abs(b)) q += 1;
    return q;
}

void swap_rows(ZMatrix& m, std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(i, c), m.at(j, c));
}

void addmul_row(ZMatrix& m, std::size_t dst, std::size_t src, const mpz_class& c) {
    if (c == 0) return;
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(dst, j) += c * m.at(src, j);
}

void negate_row(ZMatrix& m, std::size_t i) {
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = -m.at(i, j);
}

}  // namespace

HermiteResult hermite_normal_form(const ZMatrix& m) {
    HermiteResult res;
    res.h = m;
    res.u = ZMatrix::identity(m.rows());
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
        // gcd elimination in this column among rows >= r
        while (true) {
            std::size_t best = m.rows();
            for (std::size_t i = r; i < m.rows(); ++i) {
                if (res.h.at(i, col) == 0) continue;
                if (best == m.rows() ||
                    cmp(abs(res.h.at(i, col)), abs(res.h.at(best, col))) < 0)
                    best = i;
            }
            if (best == m.rows()) break;  // column clear below r
            swap_rows(res.h, r, best);
            swap_rows(res.u, r, best);
            bool clean = true;
            for (std::size_t i = r + 1; i < m.rows(); ++i) {
                if (res.h.at(i, col) == 0) continue;
                mpz_class q = bdiv(res.h.at(i, col), res.h.at(r, col));
                addmul_row(res.h, i, r, -q);
                addmul_row(res.u, i, r, -q);
                if (res.h.at(i, col) != 0) clean = false;
            }
            if (clean) break;
        }
        if (res.h.at(r, col) == 0) continue;
        if (res.h.at(r, col) < 0) {
            negate_row(res.h, r);
            negate_row(res.u, r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            mpz_class q = fdiv(res.h.at(i, col), res.h.at(r, col));
            addmul_row(res.h, i, r, -q);
            addmul_row(res.u, i, r, -q);
        }
        res.pivots.push_back(col);
        ++r;
    }
    res.rank = r;
    return res;
}

ZMatrix hnf_basis(const ZMatrix& m) {
    HermiteResult hr = hermite_normal_form(m);
    ZMatrix b(hr.rank, m.cols());
    for (std::size_t i = 0; i < hr.rank; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) b.at(i, j) = hr.h.at(i, j);
    return b;
}

std::vector<mpz_class> SmithResult::invariants() const {
    std::vector<mpz_class> inv;
    for (std::size_t i = 0; i < rank; ++i) inv.push_back(d.at(i, i));
    return inv;
}

SmithResult smith_normal_form(const ZMatrix& m) {
    // alternate row and column Hermite reductions until the matrix is
    // diagonal, then repair the divisibility chain; the Hermite passes keep
    // the entries small
    SmithResult res;
    res.d = m;
    res.u = ZMatrix::identity(m.rows());
    res.v = ZMatrix::identity(m.cols());

    auto is_diagonal = [](const ZMatrix& d) {
        for (std::size_t i = 0; i < d.rows(); ++i)
            for (std::size_t j = 0; j < d.cols(); ++j)
                if (i != j && d.at(i, j) != 0) return false;
        return true;
    };
    auto reduce_once = [&]() {
        for (int round = 0; round < 1000; ++round) {
            if (is_diagonal(res.d)) return;
            HermiteResult hr = hermite_normal_form(res.d);
            res.d = hr.h;
            res.u = hr.u * res.u;
            if (is_diagonal(res.d)) return;
            HermiteResult hc = hermite_normal_form(res.d.transpose());
            res.d = hc.h.transpose();
            res.v = res.v * hc.u.transpose();
        }
        throw error("smith normal form: reduction did not converge");
    };
    reduce_once();

    const std::size_t n = std::min(res.d.rows(), res.d.cols());
    for (bool chain = false; !chain;) {
        chain = true;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const mpz_class& a = res.d.at(i, i);
            const mpz_class& b = res.d.at(i + 1, i + 1);
            if (b == 0) continue;
            if (a == 0 || b % a != 0) {
                // merge the two diagonal positions with a column operation,
                // so the next row pass replaces a by gcd(a, b), and re-reduce
                for (std::size_t r = 0; r < res.d.rows(); ++r)
                    res.d.at(r, i) += res.d.at(r, i + 1);
                for (std::size_t r = 0; r < res.v.rows(); ++r)
                    res.v.at(r, i) += res.v.at(r, i + 1);
                reduce_once();
                chain = false;
            }
        }
    }
    res.rank = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (res.d.at(i, i) != 0) ++res.rank;
    return res;
}

ZMatrix left_kernel(const ZMatrix& m) {
    HermiteResult hr = hermite_normal_form(m);
    ZMatrix k(m.rows() - hr.rank, m.rows());
    for (std::size_t i = hr.rank; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.rows(); ++j)
            k.at(i - hr.rank, j) = hr.u.at(i, j);
    return hnf_basis(k);
}

ZMatrix row_saturation(const ZMatrix& m) {
    // right kernel as columns, then everything orthogonal to it
    ZMatrix rk = left_kernel(m.transpose());  // rows span {y : M*y^T = 0}
    if (rk.rows() == 0) {
        // full column rank: saturation = Q-span intersected with Z^n = all of Z^n
        // restricted to the row space; handled below via the kernel of an empty matrix
        return hnf_basis(ZMatrix::identity(m.cols()));
    }
    return left_kernel(rk.transpose());
}

bool in_row_span(const ZVec& v, const ZMatrix& hnfBasis) {
    ZVec w = v;
    std::size_t r = 0;
    for (std::size_t i = 0; i < hnfBasis.rows(); ++i) {
        // pivot column of row i
        std::size_t p = 0;
        while (p < hnfBasis.cols() && hnfBasis.at(i, p) == 0) ++p;
        if (p == hnfBasis.cols()) continue;
        if (w[p] % hnfBasis.at(i, p) != 0) return false;
        mpz_class q = w[p] / hnfBasis.at(i, p);
        for (std::size_t j = 0; j < w.size(); ++j) w[j] -= q * hnfBasis.at(i, j);
        ++r;
    }
    (void)r;
    return is_zero(w);
}

std::optional<ZVec> solve_left(const ZMatrix& basisRows, const ZVec& y) {
    HermiteResult hr = hermite_normal_form(basisRows);
    ZVec w = y;
    ZVec c(basisRows.rows());
    for (std::size_t i = 0; i < hr.rank; ++i) {
        std::size_t p = hr.pivots[i];
        if (w[p] % hr.h.at(i, p) != 0) return std::nullopt;
        mpz_class q = w[p] / hr.h.at(i, p);
        for (std::size_t j = 0; j < w.size(); ++j) w[j] -= q * hr.h.at(i, j);
        for (std::size_t j = 0; j < basisRows.rows(); ++j) c[j] += q * hr.u.at(i, j);
    }
    if (!is_zero(w)) return std::nullopt;
    return c;
}

ZMatrix unimodular_inverse(const ZMatrix& m) {
    if (m.rows() != m.cols()) throw error("unimodular_inverse: not square");
    HermiteResult hr = hermite_normal_form(m);
    if (hr.rank != m.rows()) throw error("unimodular_inverse: singular");
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (hr.h.at(i, i) != 1) throw error("unimodular_inverse: not unimodular");
    return hr.u;  // U*M = I
}

mpz_class det(const ZMatrix& m) {
    if (m.rows() != m.cols()) throw error("det: not square");
    // fraction-free via Smith form: |det| = product of invariants; sign lost,
    // so track it with a rational Gaussian elimination instead.
    std::size_t n = m.rows();
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m.at(i, j);
    mpq_class dt = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            dt = -dt;
        }
        dt *= a[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a[i][c] == 0) continue;
            mpq_class f = a[i][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    dt.canonicalize();
    if (dt.get_den() != 1) throw error("det: internal");
    return dt.get_num();
}

ZVec reduce_mod_rows(const ZVec& v, const ZMatrix& relHnf) {
    ZVec w = v;
    for (std::size_t i = 0; i < relHnf.rows(); ++i) {
        std::size_t p = 0;
        while (p < relHnf.cols() && relHnf.at(i, p) == 0) ++p;
        if (p == relHnf.cols()) continue;
        mpz_class q = fdiv(w[p], relHnf.at(i, p));
        for (std::size_t j = 0; j < w.size(); ++j) w[j] -= q * relHnf.at(i, j);
    }
    return w;
}

QuotientStructure quotient_structure(const ZMatrix& sup, const ZMatrix& sub) {
    QuotientStructure qs;
    ZMatrix bk = hnf_basis(sup);
    if (bk.rows() == 0) {
        if (hnf_basis(sub).rows() != 0) throw error("quotient_structure: sub not inside sup");
        return qs;
    }
    // express sub in the coordinates of the basis of sup
    ZMatrix r(0, bk.rows());
    for (std::size_t i = 0; i < sub.rows(); ++i) {
        auto c = solve_left(bk, sub.row(i));
        if (!c) throw error("quotient_structure: sub not inside sup");
        r.append_row(*c);
    }
    if (r.rows() == 0) r = ZMatrix(0, bk.rows());
    SmithResult sm = smith_normal_form(r);
    ZMatrix vinv = unimodular_inverse(sm.v);
    for (std::size_t i = 0; i < sm.rank; ++i)
        if (sm.d.at(i, i) > 1) qs.torsion.push_back(sm.d.at(i, i));
    qs.free_rank = bk.rows() - sm.rank;
    qs.free_gens = ZMatrix(qs.free_rank, sup.cols());
    for (std::size_t i = sm.rank; i < bk.rows(); ++i) {
        // basis vector e_i pulled back through V^{-1}, then into the ambient
        ZVec coord = vinv.row(i);
        qs.free_gens.set_row(i - sm.rank, mul_row(coord, bk));
    }
    return qs;
}

std::string to_string(const ZVec& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ' ';
        os << v[i].get_str();
    }
    return os.str();
}

}  // namespace cmlat
