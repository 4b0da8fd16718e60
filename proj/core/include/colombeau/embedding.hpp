#pragma once

#include <functional>
#include <vector>

#include "colombeau/bump.hpp"
#include "colombeau/common.hpp"
#include "colombeau/net.hpp"

namespace colombeau::embedding {

// Point atom: coefficient * (derivative of order `order` of the delta at
// `location`).
struct Atom {
    double location = 0.0;
    double coefficient = 1.0;
    int order = 0;
};

// Finite atom list plus an optional smooth compactly supported density.
// The density evaluator takes (y, derivative order); derivatives let the
// convolution shift orders onto the density, where the integrand stays
// cancellation-free.
struct AtomicDistribution {
    using Density = std::function<double(double y, int order)>;

    std::vector<Atom> atoms;
    Density density;  // may be empty
    Interval density_support{0.0, 0.0};

    static AtomicDistribution delta(double location, double coefficient = 1.0,
                                    int order = 0) {
        return {{{location, coefficient, order}}, nullptr, {0.0, 0.0}};
    }
};

// Mollification embedding: x -> sum coeff * (-1)^r phi_eps^(r)(x - c) plus
// the density convolved with phi_eps (adaptive quadrature).
nets::Net embed(const AtomicDistribution& d, const mollifier::MomentBump& phi);
nets::Net embed(const AtomicDistribution& d);  // plain bump mollifier

struct Example2Family {
    double scale = 1.0;        // atom locations are +-scale/n^2
    bool includes_center = true;
};

// The locally finite alternating delta sum. For each eps the atom sum is
// truncated at N(eps) = ceil(eps^-3/2); the neglected pairs obey
// |phi_eps(x + 1/n^2) - phi_eps(x - 1/n^2)| <= (2/n^2) sup|phi_eps'|, so the
// dropped tail totals at most 2 sup|phi'| eps^-1/2 (stored in the net's
// metadata as tail_bound_coeff, bound = coeff * eps^-1/2). Pairs with
// locations below a split threshold are aggregated through a Taylor expansion
// of the pair difference with partial-zeta weights instead of atom-by-atom
// summation, keeping evaluation near the accumulation point tractable.
nets::Net example2_net(const Example2Family& fam, const mollifier::Bump& phi);

// Distributional pairing <f_eps, psi> by adaptive quadrature over the test
// function's support, with subdivision at the net's feature windows.
double pair(const nets::Net& f, const std::function<double(double)>& test_fn,
            const Interval& test_support, double eps, double rel_tol = 1e-8);

// Partial pairings S_N = sum_{n<=N} psi(scale/n^2) of the one-sided truncated
// family against psi; grows like N whenever psi = 1 on the atoms.
std::vector<double> pairing_partial_sums(double scale,
                                         const std::function<double(double)>& psi,
                                         const std::vector<long long>& n_list);

// Smooth plateau test function: 1 on [-1,1], 0 outside [-1.2, 1.2].
std::function<double(double)> plateau_test_fn();

}  // namespace colombeau::embedding
