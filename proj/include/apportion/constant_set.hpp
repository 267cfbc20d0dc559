#pragma once

#include <string>
#include <vector>

namespace apportion {

// Description of K(A), the set of apportionment constants.
//
// The Superset kinds describe a proven subset of K(A) whose exact extent is
// not established; `floor` then holds a proven lower bound on all of K(A).
struct ConstantSet {
    enum class Kind {
        Empty,
        ZeroOnly,
        OpenHalfLine,
        ClosedHalfLine,
        FiniteSet,
        SupersetOfOpenHalfLine,
        SupersetOfClosedHalfLine,
        SupersetOfFiniteSet,
        Unknown,
    };
    enum class Membership { Member, NotMember, Undetermined };

    Kind kind = Kind::Unknown;
    double lo = 0.0;             // half-line endpoint
    std::vector<double> values;  // finite sets, ascending
    double floor = 0.0;          // proven lower bound (Superset and Unknown kinds)

    static ConstantSet empty();
    static ConstantSet zero_only();
    static ConstantSet open_half_line(double lo);
    static ConstantSet closed_half_line(double lo);
    static ConstantSet finite(std::vector<double> values);
    static ConstantSet unknown(double lower_bound);

    // Weakens an exact set to "contains this set", keeping `floor` as the bound.
    ConstantSet as_superset(double lower_bound) const;
    ConstantSet scaled(double factor) const;

    bool exact() const;
    bool is_superset() const;
    // Smallest described constant (endpoint or min value); 0 for ZeroOnly.
    double infimum() const;

    Membership contains(double kappa, double rel_tol = 1e-9) const;

    std::string kind_name() const;
    std::string symbolic() const;
};

}  // namespace apportion
