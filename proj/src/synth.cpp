#include "tqp/synth.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>

#include "tqp/braiding.hpp"
#include "tqp/errors.hpp"

namespace tqp::synth {

double distance(const Matrix& u, const Matrix& v) {
    if (!u.square() || !v.square() || u.rows() != v.rows())
        throw DimensionMismatch("distance: unitaries must be square and of equal dimension");
    const double n = static_cast<double>(u.rows());
    const double overlap = std::abs(u.trace_adjoint_product(v)) / n;
    return std::sqrt(std::max(0.0, 1.0 - overlap));
}

namespace {

// Letters are encoded as ell = 0 .. 2(N-1)-1 with the search ordering
// s1 < s1^-1 < s2 < s2^-1 < ...; ell^1 is the inverse letter.
BraidLetter decode_letter(int ell) {
    return BraidLetter{ell / 2 + 1, (ell % 2) == 0 ? +1 : -1};
}

void multiply_into(Matrix& out, const Matrix& a, const Matrix& b) {
    const int n = a.rows();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx sum(0.0, 0.0);
            for (int k = 0; k < n; ++k)
                sum += a(i, k) * b(k, j);
            out(i, j) = sum;
        }
}

struct SweepOutcome {
    bool hit = false;
    std::vector<int> hit_letters;
    double hit_distance = 0.0;
    unsigned long long evaluated = 0; // leaves evaluated, stops at the hit
    bool has_best = false;
    std::vector<int> best_letters;
    double best_distance = std::numeric_limits<double>::infinity();
};

// Depth-first enumeration of fixed-length suffixes under one first letter.
// Letters ascend at every level, so leaves are visited in lexicographic
// order; immediate inverse pairs are pruned.
struct SubtreeSearch {
    const std::vector<Matrix>* sig = nullptr;
    const Matrix* target = nullptr;
    double tol = 0.0;
    int len = 0;
    int alphabet = 0;

    std::vector<Matrix> stack;
    std::vector<int> letters;
    SweepOutcome out;

    SweepOutcome run(int first_letter) {
        const int dim = (*sig)[0].rows();
        stack.assign(static_cast<std::size_t>(len) + 1, Matrix(dim, dim));
        stack[0] = Matrix::identity(dim);
        letters.assign(static_cast<std::size_t>(len), 0);
        letters[0] = first_letter;
        multiply_into(stack[1], (*sig)[first_letter], stack[0]);
        dfs(1);
        return std::move(out);
    }

private:
    bool dfs(int depth) {
        if (depth == len) {
            ++out.evaluated;
            const double dist = distance(stack[depth], *target);
            if (dist <= tol) {
                out.hit = true;
                out.hit_letters = letters;
                out.hit_distance = dist;
                return true;
            }
            if (!out.has_best || dist < out.best_distance) {
                out.has_best = true;
                out.best_letters = letters;
                out.best_distance = dist;
            }
            return false;
        }
        const int skip = letters[depth - 1] ^ 1;
        for (int ell = 0; ell < alphabet; ++ell) {
            if (ell == skip)
                continue;
            letters[depth] = ell;
            multiply_into(stack[depth + 1], (*sig)[ell], stack[depth]);
            if (dfs(depth + 1))
                return true;
        }
        return false;
    }
};

BraidWord letters_to_word(int strand_count, const std::vector<int>& letters) {
    BraidWord word;
    word.strand_count = strand_count;
    word.letters.reserve(letters.size());
    for (int ell : letters)
        word.letters.push_back(decode_letter(ell));
    return word;
}

// One length-L sweep: subtrees by first letter, combined in letter order so
// serial and parallel runs agree bit for bit (earliest hit wins; on equal
// best distances the earlier subtree keeps the tie).
SweepOutcome sweep(const std::vector<Matrix>& sig, const Matrix& target, double tol, int len,
                   bool parallel) {
    const int alphabet = static_cast<int>(sig.size());
    SweepOutcome combined;
    std::vector<SweepOutcome> results(static_cast<std::size_t>(alphabet));
    auto make_task = [&](int first) {
        return [&sig, &target, tol, len, alphabet, first]() {
            SubtreeSearch search;
            search.sig = &sig;
            search.target = &target;
            search.tol = tol;
            search.len = len;
            search.alphabet = alphabet;
            return search.run(first);
        };
    };
    if (parallel) {
        std::vector<std::future<SweepOutcome>> futures;
        futures.reserve(static_cast<std::size_t>(alphabet));
        for (int first = 0; first < alphabet; ++first)
            futures.push_back(std::async(std::launch::async, make_task(first)));
        for (int first = 0; first < alphabet; ++first)
            results[first] = futures[first].get();
    } else {
        for (int first = 0; first < alphabet; ++first) {
            results[first] = make_task(first)();
            if (results[first].hit)
                break; // later subtrees contribute nothing either way
        }
    }
    for (int first = 0; first < alphabet; ++first) {
        const SweepOutcome& r = results[first];
        combined.evaluated += r.evaluated;
        if (r.hit) {
            combined.hit = true;
            combined.hit_letters = r.hit_letters;
            combined.hit_distance = r.hit_distance;
            break;
        }
        if (r.has_best && (!combined.has_best || r.best_distance < combined.best_distance)) {
            combined.has_best = true;
            combined.best_letters = r.best_letters;
            combined.best_distance = r.best_distance;
        }
    }
    return combined;
}

} // namespace

SynthResult brute_force_synth(const Boundary& boundary, const Matrix& target, int max_len,
                              double tol, const SearchOptions& options) {
    if (max_len < 0 || max_len > 14)
        throw Error("brute_force_synth: max_len must be in 0..14");
    const long long d = dim(boundary);
    if (d == 0)
        throw EmptyType("brute_force_synth: the boundary's state space has dimension 0");
    if (!target.square() || target.rows() != d)
        throw DimensionMismatch("brute_force_synth: target dimension does not match the boundary");

    const int n = boundary.strand_count();
    const int alphabet = 2 * (n - 1);
    std::vector<Matrix> sig;
    sig.reserve(static_cast<std::size_t>(alphabet));
    for (int ell = 0; ell < alphabet; ++ell) {
        const BraidLetter letter = decode_letter(ell);
        sig.push_back(sigma_matrix(boundary, letter.index, letter.sign));
    }

    SynthResult result;
    result.word = BraidWord::empty(n);
    result.distance = distance(Matrix::identity(static_cast<int>(d)), target);
    result.explored = 1;
    result.depth_reached = 0;
    if (result.distance <= tol || alphabet == 0)
        return result;

    std::vector<int> best_letters;
    double best_distance = result.distance;
    for (int len = 1; len <= max_len; ++len) {
        const SweepOutcome outcome = sweep(sig, target, tol, len, options.parallel);
        result.explored += outcome.evaluated;
        result.depth_reached = len;
        if (outcome.hit) {
            result.word = letters_to_word(n, outcome.hit_letters);
            result.distance = outcome.hit_distance;
            return result;
        }
        if (outcome.has_best && outcome.best_distance < best_distance) {
            best_distance = outcome.best_distance;
            best_letters = outcome.best_letters;
        }
    }
    result.word = letters_to_word(n, best_letters);
    result.distance = best_distance;
    return result;
}

// ---- Solovay-Kitaev refinement ------------------------------------------------

namespace {

struct Pauli {
    double c = 1.0;            // cos(theta/2)
    double sh = 0.0;           // sin(theta/2)
    double nx = 0.0, ny = 0.0, nz = 1.0;
};

// Projects a 2x2 unitary to SU(2) (phase off, trace made real non-negative)
// and reads off the axis-angle data.
Pauli axis_angle(const Matrix& u) {
    const cplx det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    const cplx scale = std::sqrt(det);
    Matrix su(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            su(i, j) = u(i, j) / scale;
    if ((su(0, 0) + su(1, 1)).real() < 0.0)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                su(i, j) = -su(i, j);
    Pauli p;
    p.c = std::clamp(((su(0, 0) + su(1, 1)) / 2.0).real(), -1.0, 1.0);
    p.sh = std::sqrt(std::max(0.0, 1.0 - p.c * p.c));
    if (p.sh > 1e-14) {
        p.nx = -((su(0, 1) + su(1, 0)) / 2.0).imag() / p.sh;
        p.ny = ((su(1, 0) - su(0, 1)) / 2.0).real() / p.sh;
        p.nz = -((su(0, 0) - su(1, 1)) / 2.0).imag() / p.sh;
        const double norm = std::sqrt(p.nx * p.nx + p.ny * p.ny + p.nz * p.nz);
        if (norm > 1e-14) {
            p.nx /= norm;
            p.ny /= norm;
            p.nz /= norm;
        } else {
            p.nx = 0.0;
            p.ny = 0.0;
            p.nz = 1.0;
        }
    }
    return p;
}

Matrix su2_rotation(double angle, double nx, double ny, double nz) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    Matrix u(2, 2);
    u(0, 0) = cplx(c, -s * nz);
    u(0, 1) = cplx(-s * ny, -s * nx);
    u(1, 0) = cplx(s * ny, -s * nx);
    u(1, 1) = cplx(c, s * nz);
    return u;
}

// Rotation taking unit vector a to unit vector b.
Matrix aligning_rotation(double ax, double ay, double az, double bx, double by, double bz) {
    const double dot = std::clamp(ax * bx + ay * by + az * bz, -1.0, 1.0);
    double cx = ay * bz - az * by;
    double cy = az * bx - ax * bz;
    double cz = ax * by - ay * bx;
    const double cross = std::sqrt(cx * cx + cy * cy + cz * cz);
    if (cross < 1e-14) {
        if (dot > 0.0)
            return Matrix::identity(2);
        // a = -b: rotate by pi about any axis orthogonal to a.
        double px = -ay, py = ax, pz = 0.0;
        const double pn = std::sqrt(px * px + py * py);
        if (pn < 1e-14) {
            px = 1.0;
            py = 0.0;
            pz = 0.0;
        } else {
            px /= pn;
            py /= pn;
        }
        return su2_rotation(std::numbers::pi, px, py, pz);
    }
    cx /= cross;
    cy /= cross;
    cz /= cross;
    return su2_rotation(std::atan2(cross, dot), cx, cy, cz);
}

// Balanced group commutator: V, W with V W V† W† = delta up to global phase
// (delta close to the identity). Standard construction: equal-angle rotations
// about x and y, conjugated so the commutator axis matches delta's axis.
std::pair<Matrix, Matrix> gc_decompose(const Matrix& delta) {
    const Pauli p = axis_angle(delta);
    // sin(theta/2) = 2 sin^2(phi/2) sqrt(1 - sin^4(phi/2)); solving with
    // u = sin^2(phi/2) gives u^2 = (1 - sqrt(1 - sin^2(theta/2))) / 2.
    const double s = std::clamp(p.sh, 0.0, 1.0);
    const double u2 = (1.0 - std::sqrt(std::max(0.0, 1.0 - s * s))) / 2.0;
    const double u = std::sqrt(std::max(0.0, u2));
    const double phi = 2.0 * std::asin(std::min(1.0, std::sqrt(u)));
    const Matrix v0 = su2_rotation(phi, 1.0, 0.0, 0.0);
    const Matrix w0 = su2_rotation(phi, 0.0, 1.0, 0.0);
    const Matrix commutator = v0 * w0 * v0.adjoint() * w0.adjoint();
    const Pauli pc = axis_angle(commutator);
    const Matrix align = aligning_rotation(pc.nx, pc.ny, pc.nz, p.nx, p.ny, p.nz);
    const Matrix align_dag = align.adjoint();
    return {align * v0 * align_dag, align * w0 * align_dag};
}

struct SkContext {
    const Boundary& boundary;
    int basic_max_len;
    double basic_tol;
    unsigned long long explored = 0;
};

BraidWord sk_approx(SkContext& ctx, const Matrix& target, int depth) {
    if (depth == 0) {
        SynthResult seed = brute_force_synth(ctx.boundary, target, ctx.basic_max_len, ctx.basic_tol);
        ctx.explored += seed.explored;
        return seed.word;
    }
    const BraidWord prev = sk_approx(ctx, target, depth - 1);
    const Matrix u_prev = braid_unitary(ctx.boundary, prev);
    const Matrix delta = target * u_prev.adjoint();
    const auto [v, w] = gc_decompose(delta);
    const BraidWord vw = sk_approx(ctx, v, depth - 1);
    const BraidWord ww = sk_approx(ctx, w, depth - 1);
    // Product V W V† W† U_prev, assembled in application order.
    return prev.concat(ww.inverse()).concat(vw.inverse()).concat(ww).concat(vw);
}

} // namespace

SynthResult sk_refine(const Boundary& boundary, const Matrix& target, int basic_max_len,
                      double basic_tol, int depth) {
    if (dim(boundary) != 2)
        throw NotAQubitSector("sk_refine: the boundary's state space is not 2-dimensional");
    if (!target.square() || target.rows() != 2)
        throw NotAQubitSector("sk_refine: the target is not a 2x2 unitary");
    if (depth < 0 || depth > 3)
        throw Error("sk_refine: depth must be in 0..3");

    SkContext ctx{boundary, basic_max_len, basic_tol};
    SynthResult seed = brute_force_synth(boundary, target, basic_max_len, basic_tol);
    ctx.explored = seed.explored;
    if (depth == 0) {
        seed.depth_reached = 0;
        return seed;
    }
    if (seed.distance >= 0.5)
        throw SeedTooCoarse("sk_refine: seed distance is at or above the convergence threshold 0.5");

    // Reuse the already-computed seed as the depth-0 approximant of `target`
    // by unrolling the top level of the recursion.
    BraidWord word = seed.word;
    for (int level = 1; level <= depth; ++level) {
        const Matrix u_prev = braid_unitary(boundary, word);
        const Matrix delta = target * u_prev.adjoint();
        const auto [v, w] = gc_decompose(delta);
        const BraidWord vw = sk_approx(ctx, v, level - 1);
        const BraidWord ww = sk_approx(ctx, w, level - 1);
        word = word.concat(ww.inverse()).concat(vw.inverse()).concat(ww).concat(vw);
    }

    SynthResult result;
    result.word = word;
    result.distance = distance(braid_unitary(boundary, word), target);
    result.explored = ctx.explored;
    result.depth_reached = depth;
    return result;
}

Matrix preset_target(const std::string& name) {
    Matrix m(2, 2);
    if (name == "X") {
        m(0, 1) = cplx(1.0, 0.0);
        m(1, 0) = cplx(1.0, 0.0);
    } else if (name == "Z") {
        m(0, 0) = cplx(1.0, 0.0);
        m(1, 1) = cplx(-1.0, 0.0);
    } else if (name == "H") {
        const double s = 1.0 / std::sqrt(2.0);
        m(0, 0) = cplx(s, 0.0);
        m(0, 1) = cplx(s, 0.0);
        m(1, 0) = cplx(s, 0.0);
        m(1, 1) = cplx(-s, 0.0);
    } else if (name == "iX") {
        m(0, 1) = cplx(0.0, 1.0);
        m(1, 0) = cplx(0.0, 1.0);
    } else {
        throw Error("unknown preset target \"" + name + "\" (expected X, Z, H or iX)");
    }
    return m;
}

} // namespace tqp::synth
