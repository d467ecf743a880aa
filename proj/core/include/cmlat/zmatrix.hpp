#ifndef CMLAT_ZMATRIX_HPP
#define CMLAT_ZMATRIX_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace cmlat {

struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

using ZVec = std::vector<mpz_class>;

/* Dense integer matrix, row-major. Vectors are rows throughout; a matrix
 * viewed as a lattice object is the span of its rows, and a linear map is
 * applied on the right (x -> x*M). */
class ZMatrix {
public:
    ZMatrix() = default;
    ZMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static ZMatrix identity(std::size_t n);
    static ZMatrix from_rows(const std::vector<ZVec>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    mpz_class& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const mpz_class& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    ZVec row(std::size_t i) const;
    void set_row(std::size_t i, const ZVec& v);
    void append_row(const ZVec& v);

    ZMatrix transpose() const;
    ZMatrix operator*(const ZMatrix& rhs) const;
    bool operator==(const ZMatrix& rhs) const = default;

    bool is_zero() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<mpz_class> a_;
};

ZVec operator+(const ZVec& a, const ZVec& b);
ZVec operator-(const ZVec& a, const ZVec& b);
ZVec operator*(const mpz_class& c, const ZVec& v);
ZVec negate(const ZVec& v);
bool is_zero(const ZVec& v);

/* x*M for a row vector x. */
ZVec mul_row(const ZVec& x, const ZMatrix& m);

/* Row Hermite normal form H = U*M with U unimodular.  Convention: pivots
 * positive, each pivot strictly right of the one above, entries above a
 * pivot reduced into [0, pivot).  Zero rows are collected at the bottom of
 * H; rank is the number of nonzero rows. */
struct HermiteResult {
    ZMatrix h;
    ZMatrix u;
    std::vector<std::size_t> pivots;  // pivot column per nonzero row
    std::size_t rank = 0;
};
HermiteResult hermite_normal_form(const ZMatrix& m);

/* The nonzero rows of the HNF: canonical basis of the row span. */
ZMatrix hnf_basis(const ZMatrix& m);

/* Smith normal form U*M*V = D, diagonal d1 | d2 | ..., all di >= 0. */
struct SmithResult {
    ZMatrix u, d, v;
    std::size_t rank = 0;
    std::vector<mpz_class> invariants() const;  // nonzero diagonal entries
};
SmithResult smith_normal_form(const ZMatrix& m);

/* Basis (HNF rows) of {x : x*M = 0}. */
ZMatrix left_kernel(const ZMatrix& m);

/* Basis of the saturation of the row span: {x : k*x in span for some k != 0}. */
ZMatrix row_saturation(const ZMatrix& m);

/* Membership of v in the row span of a matrix already in HNF basis form. */
bool in_row_span(const ZVec& v, const ZMatrix& hnfBasis);

/* Solve x * basisRows = y exactly over Z; basisRows need not be in HNF. */
std::optional<ZVec> solve_left(const ZMatrix& basisRows, const ZVec& y);

/* Inverse of a unimodular matrix (throws if not unimodular). */
ZMatrix unimodular_inverse(const ZMatrix& m);

mpz_class det(const ZMatrix& m);

/* Reduce v modulo the row span of relHnf (HNF basis): at every pivot column
 * the coefficient of the result lies in [0, pivot).  This is the canonical
 * representative used for quotient-lattice elements. */
ZVec reduce_mod_rows(const ZVec& v, const ZMatrix& relHnf);

/* Structure of span(sup)/span(sub) for sub a subgroup of sup (both given by
 * generating rows in a common ambient).  Returns the nontrivial invariant
 * factors of the torsion part and ambient representatives of a basis of the
 * free part. */
struct QuotientStructure {
    std::vector<mpz_class> torsion;  // entries > 1
    ZMatrix free_gens;               // rows; ambient coordinates
    std::size_t free_rank = 0;
};
QuotientStructure quotient_structure(const ZMatrix& sup, const ZMatrix& sub);

std::string to_string(const ZVec& v);

}  // namespace cmlat

#endif
