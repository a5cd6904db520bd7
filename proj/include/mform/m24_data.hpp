#pragma once

#include "mform/factor_product.hpp"
#include "mform/json_io.hpp"

#include <string>
#include <utility>
#include <vector>

namespace mform {

inline constexpr long kM24Order = 244823040;

struct ConjClass {
    std::string name;
    int element_order = 1;
    std::vector<std::pair<long, long>> cycle_shape; // (length, multiplicity)
    long centralizer_order = 1;
    std::vector<Cyclotomic> characters; // one per irrep, table order
    bool excluded = false;

    // fixed points in the 24-point action
    long chi() const;
    // number of cycles = multiplicity of eigenvalue 1
    long fixed_space_dim() const;
    long class_size() const { return kM24Order / centralizer_order; }
};

struct Irrep {
    std::string label;
    long degree = 0;
};

struct CharacterTable {
    std::string version;
    std::string checksum;
    std::vector<ConjClass> classes;
    std::vector<Irrep> irreps;

    // throws UserError for an unknown name
    const ConjClass& find(const std::string& name) const;
    bool has(const std::string& name) const;
};

// the eight classes left out of both constructions
const std::vector<std::string>& excluded_class_names();
bool is_allowed(const ConjClass& c);

// every relation the table must satisfy; empty means valid
std::vector<std::string> table_violations(const CharacterTable& t);

// schema + checksum + table_violations; throws DataError listing all failures
CharacterTable parse_class_data(const json& j);
CharacterTable load_class_data(const std::string& path);

// eigenvalue lambda = exp(2 pi i num/den), num/den in [0, 1/2],
// nu = exp(pi i num/den)
struct EigenPair {
    long num = 0;
    long den = 1;
    Cyclotomic lambda;
    Cyclotomic nu;
    bool unit() const { return num == 0; }
};

struct EigenData {
    int field_order = 1; // all values live in Q(zeta_field_order)
    std::vector<EigenPair> pairs;     // g, unit pairs last
    std::vector<EigenPair> neg_pairs; // -g
    Cyclotomic nu, nu_prime, nu_neg;
    Rational c_g, d_g, c_neg;
};

// throws DomainError for excluded classes or fewer than 4 unit eigenvalues,
// RationalityError if a constant fails to be rational
EigenData eigen_data(const ConjClass& c);

// 12 pairs from a cycle shape, representatives in [0, 1/2]; shift_half
// negates every eigenvalue first
std::vector<std::pair<long, long>> eigen_fractions(const std::vector<std::pair<long, long>>& shape, bool shift_half);

// eta_{sign g}(tau), or eta_{sign g}(tau/2)/eta_{sign g}(tau) when half
FactorProduct frame_eta(const ConjClass& c, int sign, bool half);

// prod over all 24 eigenvalues of (1 - lambda x) against prod (1 - x^l)^m
bool frame_polynomial_identity(const ConjClass& c);

} // namespace mform
