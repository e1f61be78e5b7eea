#include "tqp/fusion_space.hpp"

#include <sstream>

#include "tqp/errors.hpp"

namespace tqp {

Boundary::Boundary(std::shared_ptr<const AnyonModel> model_in, std::vector<label_t> externals_in,
                   label_t total_in)
    : model(std::move(model_in)), externals(std::move(externals_in)), total(total_in) {
    if (!model)
        throw Error("boundary: model must not be null");
    if (externals.empty())
        throw Error("boundary: at least one external label is required");
    for (label_t a : externals)
        model->rules.check_label(a);
    model->rules.check_label(total);
}

bool Boundary::same_as(const Boundary& other) const {
    return model.get() == other.model.get() && externals == other.externals && total == other.total;
}

std::vector<FusionTree> enumerate_trees(const Boundary& boundary) {
    const auto& rules = boundary.model->rules;
    const int n = boundary.strand_count();
    std::vector<FusionTree> out;
    if (n == 1) {
        if (boundary.externals[0] == boundary.total)
            out.push_back(FusionTree{});
        return out;
    }
    if (n == 2) {
        if (rules.N(boundary.externals[0], boundary.externals[1], boundary.total))
            out.push_back(FusionTree{});
        return out;
    }
    // Depth-first over internal charges in ascending id order; the output is
    // therefore lexicographically sorted with no duplicates.
    std::vector<label_t> internals(static_cast<std::size_t>(n) - 2);
    auto recurse = [&](auto&& self, int pos, label_t carried) -> void {
        // carried = charge of the first pos+1 externals; pos indexes internals.
        if (pos == n - 2) {
            if (rules.N(carried, boundary.externals[n - 1], boundary.total))
                out.push_back(FusionTree{internals});
            return;
        }
        for (label_t e : rules.product(carried, boundary.externals[pos + 1])) {
            internals[pos] = e;
            self(self, pos + 1, e);
        }
    };
    recurse(recurse, 0, boundary.externals[0]);
    return out;
}

long long dim(const Boundary& boundary) {
    const auto& rules = boundary.model->rules;
    const int l = rules.num_labels;
    const int n = boundary.strand_count();
    if (n == 1)
        return boundary.externals[0] == boundary.total ? 1 : 0;
    // Exact integer fusion-matrix product: v_c counts paths from a1 through
    // a2..ai ending at charge c.
    std::vector<unsigned long long> v(static_cast<std::size_t>(l), 0);
    v[boundary.externals[0]] = 1;
    std::vector<unsigned long long> w(static_cast<std::size_t>(l), 0);
    for (int i = 1; i < n; ++i) {
        std::fill(w.begin(), w.end(), 0);
        for (label_t e = 0; e < l; ++e) {
            if (v[e] == 0)
                continue;
            for (label_t c : rules.product(e, boundary.externals[i]))
                w[c] += v[e];
        }
        std::swap(v, w);
    }
    return static_cast<long long>(v[boundary.total]);
}

StateVector basis_state(const Boundary& boundary, long long index) {
    const long long d = dim(boundary);
    if (index < 0 || index >= d) {
        std::ostringstream os;
        os << "basis_state: index " << index << " outside dimension " << d;
        throw IndexOutOfRange(os.str());
    }
    StateVector state;
    state.boundary = boundary;
    state.amplitudes.assign(static_cast<std::size_t>(d), cplx(0.0, 0.0));
    state.amplitudes[static_cast<std::size_t>(index)] = cplx(1.0, 0.0);
    return state;
}

cplx inner_product(const StateVector& x, const StateVector& y) {
    if (!x.boundary.same_as(y.boundary) || x.amplitudes.size() != y.amplitudes.size())
        throw BoundaryMismatch("inner_product: states live over different boundaries");
    cplx sum(0.0, 0.0);
    for (std::size_t i = 0; i < x.amplitudes.size(); ++i)
        sum += std::conj(x.amplitudes[i]) * y.amplitudes[i];
    return sum;
}

} // namespace tqp
