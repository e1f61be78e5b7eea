#include "tqp/braiding.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "tqp/errors.hpp"

namespace tqp {

BraidWord BraidWord::inverse() const {
    BraidWord out;
    out.strand_count = strand_count;
    out.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
        out.letters.push_back(BraidLetter{it->index, -it->sign});
    return out;
}

BraidWord BraidWord::concat(const BraidWord& other) const {
    if (strand_count != other.strand_count)
        throw BoundaryMismatch("braid word concat: strand counts disagree");
    BraidWord out = *this;
    out.letters.insert(out.letters.end(), other.letters.begin(), other.letters.end());
    return out;
}

namespace {

void check_generator_index(const Boundary& boundary, int i) {
    const int n = boundary.strand_count();
    if (i < 1 || i > n - 1) {
        std::ostringstream os;
        os << "sigma index " << i << " outside 1.." << n - 1 << " for " << n << " strands";
        throw IndexOutOfRange(os.str());
    }
}

} // namespace

namespace detail {

Matrix sigma_matrix_uncached(const Boundary& boundary, int i, int sign) {
    check_generator_index(boundary, i);
    const std::vector<FusionTree> trees = enumerate_trees(boundary);
    const int d = static_cast<int>(trees.size());
    if (d == 0)
        throw EmptyType("sigma_matrix: the boundary's state space has dimension 0");

    const AnyonModel& model = *boundary.model;
    const int n = boundary.strand_count();
    Matrix plus(d, d);

    if (i == 1) {
        // sigma_1 is diagonal in the left-comb basis: the pair (a1, a2) fuses
        // at an explicit vertex with charge e_1 (= total when N = 2).
        for (int t = 0; t < d; ++t) {
            const label_t e = n == 2 ? boundary.total : trees[t].internals[0];
            plus(t, t) = model.r_symbol(boundary.externals[0], boundary.externals[1], e);
        }
    } else {
        // sigma_i acts on the internal charge m = e_{i-1} between
        // x = e_{i-2} and q = e_i as B = F diag(R) F†, where
        // F = [F^{x, a_i, a_{i+1}}_q].
        std::map<std::vector<label_t>, int> index_of;
        for (int t = 0; t < d; ++t)
            index_of.emplace(trees[t].internals, t);
        const label_t ai = boundary.externals[i - 1];
        const label_t aj = boundary.externals[i];
        for (int t = 0; t < d; ++t) {
            const auto& internals = trees[t].internals;
            const label_t m = internals[i - 2];
            const label_t x = i >= 3 ? internals[i - 3] : boundary.externals[0];
            const label_t q = i <= n - 2 ? internals[i - 1] : boundary.total;
            const FBlock* block = model.f_block(x, ai, aj, q);
            if (block == nullptr)
                throw MissingSymbol("sigma_matrix: no F block for an admissible vertex");
            const int row_m = block->row_index(m);
            std::vector<label_t> probe = internals;
            for (std::size_t rp = 0; rp < block->rows.size(); ++rp) {
                const label_t mp = block->rows[rp];
                probe[i - 2] = mp;
                const auto found = index_of.find(probe);
                if (found == index_of.end())
                    continue;
                cplx sum(0.0, 0.0);
                for (std::size_t cc = 0; cc < block->cols.size(); ++cc) {
                    const cplx rphase = model.r_symbol(ai, aj, block->cols[cc]);
                    sum += block->at(row_m, static_cast<int>(cc)) * rphase *
                           std::conj(block->at(static_cast<int>(rp), static_cast<int>(cc)));
                }
                plus(found->second, t) = sum;
            }
        }
    }
    return sign >= 0 ? plus : plus.adjoint();
}

} // namespace detail

namespace {

struct SigmaKey {
    std::shared_ptr<const AnyonModel> model; // pinned so addresses stay unique
    std::vector<label_t> externals;
    label_t total;
    int i;
    int sign;

    bool operator<(const SigmaKey& other) const {
        if (model.get() != other.model.get())
            return model.get() < other.model.get();
        if (externals != other.externals)
            return externals < other.externals;
        if (total != other.total)
            return total < other.total;
        if (i != other.i)
            return i < other.i;
        return sign < other.sign;
    }
};

std::mutex sigma_cache_mutex;
std::map<SigmaKey, Matrix> sigma_cache;

} // namespace

Matrix sigma_matrix(const Boundary& boundary, int i, int sign) {
    check_generator_index(boundary, i);
    sign = sign >= 0 ? +1 : -1;
    SigmaKey key{boundary.model, boundary.externals, boundary.total, i, sign};
    {
        std::lock_guard<std::mutex> lock(sigma_cache_mutex);
        const auto found = sigma_cache.find(key);
        if (found != sigma_cache.end())
            return found->second;
    }
    Matrix computed = detail::sigma_matrix_uncached(boundary, i, sign);
    {
        std::lock_guard<std::mutex> lock(sigma_cache_mutex);
        if (sigma_cache.size() > 4096)
            sigma_cache.clear();
        const auto [it, inserted] = sigma_cache.emplace(std::move(key), std::move(computed));
        return it->second;
    }
}

Matrix braid_unitary(const Boundary& boundary, const BraidWord& word) {
    if (word.strand_count != boundary.strand_count())
        throw BoundaryMismatch("braid_unitary: word strand count does not match the boundary");
    const long long d = dim(boundary);
    if (d == 0)
        throw EmptyType("braid_unitary: the boundary's state space has dimension 0");
    Matrix u = Matrix::identity(static_cast<int>(d));
    for (const BraidLetter& letter : word.letters)
        u = sigma_matrix(boundary, letter.index, letter.sign) * u;
    return u;
}

StateVector transport(const StateVector& state, const BraidWord& word) {
    if (word.strand_count != state.boundary.strand_count())
        throw BoundaryMismatch("transport: word strand count does not match the state");
    StateVector out;
    out.boundary = state.boundary;
    out.amplitudes = state.amplitudes;
    for (const BraidLetter& letter : word.letters)
        out.amplitudes = sigma_matrix(out.boundary, letter.index, letter.sign) * out.amplitudes;
    return out;
}

RelationReport relation_residuals(const Boundary& boundary) {
    RelationReport report;
    const int n = boundary.strand_count();
    if (n < 2 || dim(boundary) == 0)
        return report; // vacuous
    std::vector<Matrix> sig;
    sig.reserve(static_cast<std::size_t>(n) - 1);
    for (int i = 1; i <= n - 1; ++i)
        sig.push_back(sigma_matrix(boundary, i, +1));
    for (int i = 0; i + 1 < n - 1; ++i) {
        const Matrix lhs = sig[i] * sig[i + 1] * sig[i];
        const Matrix rhs = sig[i + 1] * sig[i] * sig[i + 1];
        report.yang_baxter = std::max(report.yang_baxter, lhs.max_abs_diff(rhs));
    }
    for (int i = 0; i < n - 1; ++i)
        for (int j = i + 2; j < n - 1; ++j) {
            const Matrix lhs = sig[i] * sig[j];
            const Matrix rhs = sig[j] * sig[i];
            report.far_commutation = std::max(report.far_commutation, lhs.max_abs_diff(rhs));
        }
    for (const Matrix& s : sig)
        report.unitarity = std::max(report.unitarity, s.unitarity_defect());
    return report;
}

} // namespace tqp
