#pragma once

#include "mform/factor_product.hpp"
#include "mform/series.hpp"

namespace mform {

// q-exponents below are in 1/24 units; "half" families run over q^(n-1/2)

// q^(k/24) prod (1 - q^n)^k
FactorProduct eta_pow_fp(long k);
// -q^(1/4) y prod (1 - y^-1 q^(n-1))^2 (1 - y q^n)^2 (1 - q^n)^2
FactorProduct theta1_sq_fp();
// theta_j(tau,z)^2 / theta_j(tau,0)^2, j = 2, 3, 4
FactorProduct theta_quot_fp(int j);
// -i y^(1/2) / theta_1 = q^(-1/8) / prod (1 - y^-1 q^(n-1)) (1 - y q^n) (1 - q^n)
FactorProduct appell_prefactor_fp();
// the summands of sum_n (-1)^n y^n q^(n(n+1)/2) / (1 - y q^n) that can reach
// q^(qmax24/24), each rewritten so it expands in 0 < -Im z < Im tau
std::vector<FactorProduct> appell_terms(long qmax24);

// sound upper bound on r for terms with q-exponent <= qtop of a series with ycap C
long ymax_bound(long ycap, long qtop);

// expand two factor products and multiply so the product is exact on (qmax24, ylow)
QYSeries expand_mul(const FactorProduct& a, const QYSeries& b, long qmax24, long ylow);
// a * b truncated to (qmax24, ylow); WindowError if the product does not reach it
QYSeries mul_to(const QYSeries& a, const QYSeries& b, long qmax24, long ylow);

QYSeries eta_pow(long k, long qmax24);
QYSeries theta1_sq(long qmax24, long ylow);
QYSeries theta_quot(int j, long qmax24, long ylow);
// theta_j quotient times the eta_{+-g}(tau/2)/eta_{+-g}(tau) pairing
QYSeries theta_quot_half(int j, const FactorProduct& pairing, long qmax24, long ylow);

// the Appell sum as a series, exact on (qmax24, ylow)
QYSeries appell_sum(long qmax24, long ylow);
// extra * mu, with extra folded into the mu prefactor before expansion
QYSeries appell_times(const FactorProduct& extra, long qmax24, long ylow);
QYSeries appell_mu(long qmax24, long ylow);
QYSeries eta3mu(long qmax24, long ylow);

// sum over r > s > 0, r - s odd, of s q^(rs/2)
QYSeries f2(long qmax24);

} // namespace mform
