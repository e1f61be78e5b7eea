#include "tqp/anyon_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "model_build.hpp"
#include "tqp/errors.hpp"

namespace tqp {

// ---- FusionRules ------------------------------------------------------------

void FusionRules::check_label(label_t a) const {
    if (!valid_label(a)) {
        std::ostringstream os;
        os << "label " << a << " is not in the model's label set (0.." << num_labels - 1 << ")";
        throw UnknownLabel(os.str());
    }
}

int FusionRules::N(label_t a, label_t b, label_t c) const {
    check_label(a);
    check_label(b);
    check_label(c);
    const std::size_t l = static_cast<std::size_t>(num_labels);
    return n[(static_cast<std::size_t>(a) * l + b) * l + c];
}

void FusionRules::set_N(label_t a, label_t b, label_t c, int value) {
    const std::size_t l = static_cast<std::size_t>(num_labels);
    n[(static_cast<std::size_t>(a) * l + b) * l + c] = static_cast<std::uint8_t>(value);
}

const std::vector<label_t>& FusionRules::product(label_t a, label_t b) const {
    check_label(a);
    check_label(b);
    return products[static_cast<std::size_t>(a) * num_labels + b];
}

void FusionRules::rebuild_products() {
    const int l = num_labels;
    products.assign(static_cast<std::size_t>(l) * l, {});
    for (label_t a = 0; a < l; ++a)
        for (label_t b = 0; b < l; ++b) {
            auto& out = products[static_cast<std::size_t>(a) * l + b];
            for (label_t c = 0; c < l; ++c)
                if (n[(static_cast<std::size_t>(a) * l + b) * l + c])
                    out.push_back(c);
        }
}

void check_fusion_rules(const FusionRules& rules) {
    const int l = rules.num_labels;
    if (l <= 0)
        throw ConsistencyError("fusion rules: empty label set");
    if (!rules.valid_label(rules.unit))
        throw ConsistencyError("fusion rules: unit label out of range");
    if (static_cast<int>(rules.dual.size()) != l)
        throw ConsistencyError("fusion rules: dual map has wrong size");
    for (label_t a = 0; a < l; ++a) {
        if (!rules.valid_label(rules.dual[a]))
            throw ConsistencyError("fusion rules: dual maps outside the label set");
        if (rules.dual[rules.dual[a]] != a)
            throw ConsistencyError("fusion rules: dual map is not involutive");
    }
    for (label_t a = 0; a < l; ++a)
        for (label_t c = 0; c < l; ++c) {
            if (rules.N(a, rules.unit, c) != (c == a ? 1 : 0))
                throw ConsistencyError("fusion rules: N(a, unit, c) != [c == a]");
            if (rules.N(rules.unit, a, c) != (c == a ? 1 : 0))
                throw ConsistencyError("fusion rules: N(unit, b, c) != [c == b]");
        }
    for (label_t a = 0; a < l; ++a)
        for (label_t b = 0; b < l; ++b) {
            if (rules.N(a, b, rules.unit) != (b == rules.dual[a] ? 1 : 0))
                throw ConsistencyError("fusion rules: N(a, b, unit) != [b == dual(a)]");
            for (label_t c = 0; c < l; ++c)
                if (rules.N(a, b, c) != rules.N(b, a, c))
                    throw ConsistencyError("fusion rules: fusion table is not commutative");
        }
}

// ---- FBlock -----------------------------------------------------------------

int FBlock::row_index(label_t e) const {
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i] == e)
            return static_cast<int>(i);
    return -1;
}

int FBlock::col_index(label_t f) const {
    for (std::size_t i = 0; i < cols.size(); ++i)
        if (cols[i] == f)
            return static_cast<int>(i);
    return -1;
}

Matrix FBlock::as_matrix() const {
    Matrix out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
            out(static_cast<int>(r), static_cast<int>(c)) = at(static_cast<int>(r), static_cast<int>(c));
    return out;
}

// ---- AnyonModel ---------------------------------------------------------------

std::size_t AnyonModel::pack3(label_t a, label_t b, label_t c) const {
    const std::size_t l = static_cast<std::size_t>(rules.num_labels);
    return (static_cast<std::size_t>(a) * l + b) * l + c;
}

std::size_t AnyonModel::pack4(label_t a, label_t b, label_t c, label_t d) const {
    const std::size_t l = static_cast<std::size_t>(rules.num_labels);
    return ((static_cast<std::size_t>(a) * l + b) * l + c) * l + d;
}

const FBlock* AnyonModel::f_block(label_t a, label_t b, label_t c, label_t d) const {
    rules.check_label(a);
    rules.check_label(b);
    rules.check_label(c);
    rules.check_label(d);
    const std::int32_t idx = f_block_index[pack4(a, b, c, d)];
    return idx < 0 ? nullptr : &f_blocks[idx];
}

cplx AnyonModel::f_symbol(label_t a, label_t b, label_t c, label_t d, label_t e, label_t f) const {
    rules.check_label(e);
    rules.check_label(f);
    const bool admissible = rules.N(a, b, e) && rules.N(e, c, d) && rules.N(b, c, f) && rules.N(a, f, d);
    if (!admissible)
        return cplx(0.0, 0.0);
    const FBlock* block = f_block(a, b, c, d);
    if (block != nullptr) {
        const int r = block->row_index(e);
        const int col = block->col_index(f);
        if (r >= 0 && col >= 0 && block->has(r, col))
            return block->at(r, col);
    }
    std::ostringstream os;
    os << "F symbol (" << a << "," << b << "," << c << "," << d << "," << e << "," << f
       << ") is admissible but absent from the table";
    throw MissingSymbol(os.str());
}

cplx AnyonModel::r_symbol(label_t a, label_t b, label_t c) const {
    if (!rules.N(a, b, c))
        return cplx(0.0, 0.0);
    const std::size_t idx = pack3(a, b, c);
    if (!r_present[idx]) {
        std::ostringstream os;
        os << "R symbol (" << a << "," << b << "," << c << ") is admissible but absent from the table";
        throw MissingSymbol(os.str());
    }
    return r[idx];
}

std::optional<label_t> AnyonModel::label_by_name(const std::string& name) const {
    for (std::size_t i = 0; i < label_names.size(); ++i)
        if (label_names[i] == name)
            return static_cast<label_t>(i);
    return std::nullopt;
}

const std::string& AnyonModel::label_name(label_t a) const {
    rules.check_label(a);
    return label_names[a];
}

// ---- table construction -----------------------------------------------------

namespace detail {

void init_storage(AnyonModel& model) {
    const std::size_t l = static_cast<std::size_t>(model.rules.num_labels);
    model.f_block_index.assign(l * l * l * l, -1);
    model.f_blocks.clear();
    model.r.assign(l * l * l, cplx(0.0, 0.0));
    model.r_present.assign(l * l * l, 0);
}

void build_tables(AnyonModel& model,
                  const std::function<cplx(label_t, label_t, label_t, label_t, label_t, label_t)>& fsym,
                  const std::function<cplx(label_t, label_t, label_t)>& rsym) {
    init_storage(model);
    const int l = model.rules.num_labels;
    const FusionRules& rules = model.rules;
    for (label_t a = 0; a < l; ++a)
        for (label_t b = 0; b < l; ++b)
            for (label_t c = 0; c < l; ++c)
                for (label_t d = 0; d < l; ++d) {
                    FBlock block;
                    for (label_t e : rules.product(a, b))
                        if (rules.N(e, c, d))
                            block.rows.push_back(e);
                    for (label_t f : rules.product(b, c))
                        if (rules.N(a, f, d))
                            block.cols.push_back(f);
                    if (block.rows.empty() || block.cols.empty())
                        continue;
                    block.m.resize(block.rows.size() * block.cols.size());
                    block.present.assign(block.m.size(), 1);
                    for (std::size_t re = 0; re < block.rows.size(); ++re)
                        for (std::size_t cf = 0; cf < block.cols.size(); ++cf)
                            block.at(static_cast<int>(re), static_cast<int>(cf)) =
                                fsym(a, b, c, d, block.rows[re], block.cols[cf]);
                    model.f_block_index[model.pack4(a, b, c, d)] =
                        static_cast<std::int32_t>(model.f_blocks.size());
                    model.f_blocks.push_back(std::move(block));
                }
    for (label_t a = 0; a < l; ++a)
        for (label_t b = 0; b < l; ++b)
            for (label_t c : rules.product(a, b)) {
                model.r[model.pack3(a, b, c)] = rsym(a, b, c);
                model.r_present[model.pack3(a, b, c)] = 1;
            }
}

} // namespace detail

// ---- named models -------------------------------------------------------------

namespace {

FusionRules make_rules(int num_labels, label_t unit, std::vector<label_t> dual) {
    FusionRules rules;
    rules.num_labels = num_labels;
    rules.unit = unit;
    rules.dual = std::move(dual);
    rules.n.assign(static_cast<std::size_t>(num_labels) * num_labels * num_labels, 0);
    return rules;
}

} // namespace

AnyonModel fibonacci_model() {
    // Labels: 0 = 1 (vacuum), 1 = tau. tau x tau = 1 + tau.
    AnyonModel model;
    model.name = "fibonacci";
    model.rules = make_rules(2, 0, {0, 1});
    auto& rules = model.rules;
    rules.set_N(0, 0, 0, 1);
    rules.set_N(0, 1, 1, 1);
    rules.set_N(1, 0, 1, 1);
    rules.set_N(1, 1, 0, 1);
    rules.set_N(1, 1, 1, 1);
    rules.rebuild_products();
    model.label_names = {"1", "tau"};

    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    const double inv_phi = 1.0 / phi;
    const double inv_sqrt_phi = 1.0 / std::sqrt(phi);
    const double pi = std::numbers::pi;

    auto fsym = [&](label_t a, label_t b, label_t c, label_t d, label_t e, label_t f) -> cplx {
        if (a == 1 && b == 1 && c == 1 && d == 1) {
            const double v00 = inv_phi, v01 = inv_sqrt_phi, v11 = -inv_phi;
            if (e == 0 && f == 0) return cplx(v00, 0.0);
            if (e == 0 && f == 1) return cplx(v01, 0.0);
            if (e == 1 && f == 0) return cplx(v01, 0.0);
            return cplx(v11, 0.0);
        }
        return cplx(1.0, 0.0);
    };
    auto rsym = [&](label_t a, label_t b, label_t c) -> cplx {
        if (a == 1 && b == 1)
            return c == 0 ? std::polar(1.0, 4.0 * pi / 5.0) : std::polar(1.0, -3.0 * pi / 5.0);
        return cplx(1.0, 0.0);
    };
    detail::build_tables(model, fsym, rsym);
    return model;
}

AnyonModel ising_model() {
    // Labels: 0 = 1 (vacuum), 1 = sigma, 2 = psi.
    // sigma x sigma = 1 + psi, sigma x psi = sigma, psi x psi = 1.
    AnyonModel model;
    model.name = "ising";
    model.rules = make_rules(3, 0, {0, 1, 2});
    auto& rules = model.rules;
    rules.set_N(0, 0, 0, 1);
    rules.set_N(0, 1, 1, 1);
    rules.set_N(1, 0, 1, 1);
    rules.set_N(0, 2, 2, 1);
    rules.set_N(2, 0, 2, 1);
    rules.set_N(1, 1, 0, 1);
    rules.set_N(1, 1, 2, 1);
    rules.set_N(1, 2, 1, 1);
    rules.set_N(2, 1, 1, 1);
    rules.set_N(2, 2, 0, 1);
    rules.rebuild_products();
    model.label_names = {"1", "sigma", "psi"};

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const double pi = std::numbers::pi;

    auto fsym = [&](label_t a, label_t b, label_t c, label_t d, label_t e, label_t f) -> cplx {
        if (a == 1 && b == 1 && c == 1 && d == 1) {
            // [F^{sigma sigma sigma}_sigma] over e,f in {1, psi}.
            const double sign = (e == 2 && f == 2) ? -1.0 : 1.0;
            return cplx(sign * inv_sqrt2, 0.0);
        }
        if (a == 1 && b == 2 && c == 1 && d == 2)
            return cplx(-1.0, 0.0); // [F^{sigma psi sigma}_psi]
        if (a == 2 && b == 1 && c == 2 && d == 1)
            return cplx(-1.0, 0.0); // [F^{psi sigma psi}_sigma]
        return cplx(1.0, 0.0);
    };
    auto rsym = [&](label_t a, label_t b, label_t c) -> cplx {
        if (a == 1 && b == 1)
            return c == 0 ? std::polar(1.0, -pi / 8.0) : std::polar(1.0, 3.0 * pi / 8.0);
        if ((a == 1 && b == 2) || (a == 2 && b == 1))
            return cplx(0.0, -1.0); // R^{sigma psi}_sigma = R^{psi sigma}_sigma
        if (a == 2 && b == 2)
            return cplx(-1.0, 0.0); // R^{psi psi}_1
        return cplx(1.0, 0.0);
    };
    detail::build_tables(model, fsym, rsym);
    return model;
}

std::optional<AnyonModel> named_model(const std::string& name) {
    if (name == "fibonacci")
        return fibonacci_model();
    if (name == "ising")
        return ising_model();
    if (name.rfind("su2_", 0) == 0) {
        const std::string tail = name.substr(4);
        if (!tail.empty() && tail.find_first_not_of("0123456789") == std::string::npos && tail.size() <= 3) {
            const int k = std::stoi(tail);
            if (k >= 1 && k <= 16)
                return su2k_model(k);
        }
    }
    return std::nullopt;
}

// ---- verifiers ----------------------------------------------------------------

// Pentagon identity between the two recoupling paths on four strands
// ((ab)c)d -> a(b(cd)), with left tree internals (p, q) and right tree
// internals (s, u), total charge e:
//   F(p,c,d,e)[q,s] * F(a,b,s,e)[p,u]
//     = sum_r F(a,b,c,q)[p,r] * F(a,r,d,e)[q,u] * F(b,c,d,u)[r,s].
ConsistencyReport verify_pentagon(const AnyonModel& model, double tol) {
    const FusionRules& rules = model.rules;
    const int l = rules.num_labels;
    ConsistencyReport report;
    for (label_t a = 0; a < l; ++a)
        for (label_t b = 0; b < l; ++b)
            for (label_t c = 0; c < l; ++c)
                for (label_t d = 0; d < l; ++d)
                    for (label_t p : rules.product(a, b))
                        for (label_t q : rules.product(p, c))
                            for (label_t e : rules.product(q, d))
                                for (label_t s : rules.product(c, d))
                                    for (label_t u : rules.product(b, s)) {
                                        if (!rules.N(a, u, e))
                                            continue;
                                        const cplx lhs = model.f_symbol(p, c, d, e, q, s) *
                                                         model.f_symbol(a, b, s, e, p, u);
                                        cplx rhs(0.0, 0.0);
                                        for (label_t rr : rules.product(b, c))
                                            rhs += model.f_symbol(a, b, c, q, p, rr) *
                                                   model.f_symbol(a, rr, d, e, q, u) *
                                                   model.f_symbol(b, c, d, u, rr, s);
                                        const double resid = std::abs(lhs - rhs);
                                        if (resid > report.max_residual) {
                                            report.max_residual = resid;
                                            report.worst = {a, b, c, d, e, p, q, s, u};
                                        }
                                    }
    report.pass = report.max_residual <= tol;
    return report;
}

// Hexagon identities for both chiralities. For the braiding of c over (a,b)
// with total d, row charge e in (ca) and column charge g in (cb):
//   R(c,a,e) * F(a,c,b,d)[e,g] * R(c,b,g)
//     = sum_f F(c,a,b,d)[e,f] * R(c,f,d) * F(a,b,c,d)[f,g]
// and the same identity with every R replaced by its inverse.
ConsistencyReport verify_hexagon(const AnyonModel& model, double tol) {
    const FusionRules& rules = model.rules;
    const int l = rules.num_labels;
    ConsistencyReport report;
    for (int chirality = 0; chirality < 2; ++chirality) {
        auto rme = [&](label_t x, label_t y, label_t z) -> cplx {
            const cplx v = model.r_symbol(x, y, z);
            return chirality == 0 ? v : cplx(1.0, 0.0) / v;
        };
        for (label_t c = 0; c < l; ++c)
            for (label_t a = 0; a < l; ++a)
                for (label_t b = 0; b < l; ++b)
                    for (label_t e : rules.product(c, a))
                        for (label_t d : rules.product(e, b))
                            for (label_t g : rules.product(c, b)) {
                                if (!rules.N(a, g, d))
                                    continue;
                                const cplx lhs =
                                    rme(c, a, e) * model.f_symbol(a, c, b, d, e, g) * rme(c, b, g);
                                cplx rhs(0.0, 0.0);
                                for (label_t f : rules.product(a, b)) {
                                    if (!rules.N(c, f, d))
                                        continue;
                                    rhs += model.f_symbol(c, a, b, d, e, f) * rme(c, f, d) *
                                           model.f_symbol(a, b, c, d, f, g);
                                }
                                const double resid = std::abs(lhs - rhs);
                                if (resid > report.max_residual) {
                                    report.max_residual = resid;
                                    report.worst = {c, a, b, d, e, g, chirality};
                                }
                            }
    }
    report.pass = report.max_residual <= tol;
    return report;
}

double max_f_unitarity_defect(const AnyonModel& model) {
    double worst = 0.0;
    for (const FBlock& block : model.f_blocks)
        worst = std::max(worst, block.as_matrix().unitarity_defect());
    return worst;
}

double quantum_dimension(const AnyonModel& model, label_t a) {
    model.rules.check_label(a);
    const int l = model.rules.num_labels;
    // Power iteration on N_a + I; the shift separates the Perron root from
    // eigenvalues of equal modulus (fusion matrices can be bipartite).
    std::vector<double> v(static_cast<std::size_t>(l), 1.0 / std::sqrt(static_cast<double>(l)));
    std::vector<double> w(static_cast<std::size_t>(l), 0.0);
    double lambda = 0.0;
    for (int it = 0; it < 200000; ++it) {
        for (int bb = 0; bb < l; ++bb) {
            double sum = v[bb];
            for (int cc = 0; cc < l; ++cc)
                if (model.rules.N(a, bb, cc))
                    sum += v[cc];
            w[bb] = sum;
        }
        double vw = 0.0, vv = 0.0, norm2 = 0.0;
        for (int i = 0; i < l; ++i) {
            vw += v[i] * w[i];
            vv += v[i] * v[i];
            norm2 += w[i] * w[i];
        }
        const double next = vw / vv;
        const double norm = std::sqrt(norm2);
        for (int i = 0; i < l; ++i)
            v[i] = w[i] / norm;
        if (it > 2 && std::abs(next - lambda) <= 1e-15 * std::max(1.0, std::abs(next))) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return lambda - 1.0;
}

} // namespace tqp
