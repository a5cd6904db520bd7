#pragma once

#include "mform/series.hpp"

namespace mform::kernels {

// Row-blocked product: every output q-row is an independent task, rows are
// turned into integer vectors over a common denominator and convolved with
// mpz_addmul. parallel=false runs the same code on one thread.
QYSeries mul_blocked(const QYSeries& a, const QYSeries& b, bool parallel);

// naive term-by-term product over a sparse map; the test oracle
QYSeries mul_reference(const QYSeries& a, const QYSeries& b);

} // namespace mform::kernels
