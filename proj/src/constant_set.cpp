#include "apportion/constant_set.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "apportion/errors.hpp"

namespace apportion {
namespace {

std::string fmt(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

bool within(double a, double b, double rel_tol) {
    return std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

ConstantSet ConstantSet::empty() { return ConstantSet{Kind::Empty, 0.0, {}, 0.0}; }
ConstantSet ConstantSet::zero_only() { return ConstantSet{Kind::ZeroOnly, 0.0, {}, 0.0}; }

ConstantSet ConstantSet::open_half_line(double lo) {
    if (!(lo >= 0.0)) throw InvalidInput("constant set: endpoint must be >= 0");
    return ConstantSet{Kind::OpenHalfLine, lo, {}, lo};
}

ConstantSet ConstantSet::closed_half_line(double lo) {
    if (!(lo >= 0.0)) throw InvalidInput("constant set: endpoint must be >= 0");
    return ConstantSet{Kind::ClosedHalfLine, lo, {}, lo};
}

ConstantSet ConstantSet::finite(std::vector<double> values) {
    if (values.empty()) throw InvalidInput("constant set: finite set needs values");
    for (const double v : values)
        if (!(v > 0.0)) throw InvalidInput("constant set: finite values must be positive");
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end(),
                             [](double a, double b) { return within(a, b, 1e-12); }),
                 values.end());
    const double lo = values.front();
    return ConstantSet{Kind::FiniteSet, 0.0, std::move(values), lo};
}

ConstantSet ConstantSet::unknown(double lower_bound) {
    return ConstantSet{Kind::Unknown, 0.0, {}, std::max(0.0, lower_bound)};
}

ConstantSet ConstantSet::as_superset(double lower_bound) const {
    ConstantSet out = *this;
    out.floor = std::max(0.0, lower_bound);
    switch (kind) {
        case Kind::OpenHalfLine: out.kind = Kind::SupersetOfOpenHalfLine; break;
        case Kind::ClosedHalfLine: out.kind = Kind::SupersetOfClosedHalfLine; break;
        case Kind::FiniteSet: out.kind = Kind::SupersetOfFiniteSet; break;
        default: break;
    }
    return out;
}

ConstantSet ConstantSet::scaled(double factor) const {
    if (!(factor > 0.0)) throw InvalidInput("constant set: scale factor must be positive");
    ConstantSet out = *this;
    out.lo *= factor;
    out.floor *= factor;
    for (auto& v : out.values) v *= factor;
    return out;
}

bool ConstantSet::exact() const {
    switch (kind) {
        case Kind::Empty:
        case Kind::ZeroOnly:
        case Kind::OpenHalfLine:
        case Kind::ClosedHalfLine:
        case Kind::FiniteSet: return true;
        default: return false;
    }
}

bool ConstantSet::is_superset() const {
    return kind == Kind::SupersetOfOpenHalfLine || kind == Kind::SupersetOfClosedHalfLine ||
           kind == Kind::SupersetOfFiniteSet;
}

double ConstantSet::infimum() const {
    switch (kind) {
        case Kind::FiniteSet:
        case Kind::SupersetOfFiniteSet: return values.front();
        case Kind::Unknown: return floor;
        default: return lo;
    }
}

ConstantSet::Membership ConstantSet::contains(double kappa, double rel_tol) const {
    using enum Membership;
    if (!(kappa >= 0.0)) return NotMember;
    auto in_described = [&]() -> bool {
        switch (kind) {
            case Kind::OpenHalfLine:
            case Kind::SupersetOfOpenHalfLine: return kappa > lo;
            case Kind::ClosedHalfLine:
            case Kind::SupersetOfClosedHalfLine: return kappa >= lo * (1.0 - rel_tol);
            case Kind::FiniteSet:
            case Kind::SupersetOfFiniteSet:
                return std::any_of(values.begin(), values.end(),
                                   [&](double v) { return within(kappa, v, rel_tol); });
            default: return false;
        }
    };
    switch (kind) {
        case Kind::Empty: return NotMember;
        case Kind::ZeroOnly: return kappa == 0.0 ? Member : NotMember;
        case Kind::OpenHalfLine:
        case Kind::ClosedHalfLine:
        case Kind::FiniteSet: return in_described() ? Member : NotMember;
        case Kind::Unknown:
            return kappa < floor * (1.0 - rel_tol) ? NotMember : Undetermined;
        default:
            if (in_described()) return Member;
            return kappa < floor * (1.0 - rel_tol) ? NotMember : Undetermined;
    }
}

std::string ConstantSet::kind_name() const {
    switch (kind) {
        case Kind::Empty: return "Empty";
        case Kind::ZeroOnly: return "ZeroOnly";
        case Kind::OpenHalfLine: return "OpenHalfLine";
        case Kind::ClosedHalfLine: return "ClosedHalfLine";
        case Kind::FiniteSet: return "FiniteSet";
        case Kind::SupersetOfOpenHalfLine: return "SupersetOfOpenHalfLine";
        case Kind::SupersetOfClosedHalfLine: return "SupersetOfClosedHalfLine";
        case Kind::SupersetOfFiniteSet: return "SupersetOfFiniteSet";
        case Kind::Unknown: return "Unknown";
    }
    return "Unknown";
}

std::string ConstantSet::symbolic() const {
    auto list = [&] {
        std::string s = "{";
        for (size_t i = 0; i < values.size(); ++i) s += (i ? ", " : "") + fmt(values[i]);
        return s + "}";
    };
    switch (kind) {
        case Kind::Empty: return "∅";
        case Kind::ZeroOnly: return "{0}";
        case Kind::OpenHalfLine: return "(" + fmt(lo) + ", ∞)";
        case Kind::ClosedHalfLine: return "[" + fmt(lo) + ", ∞)";
        case Kind::FiniteSet: return list();
        case Kind::SupersetOfOpenHalfLine: return "⊇ (" + fmt(lo) + ", ∞)";
        case Kind::SupersetOfClosedHalfLine: return "⊇ [" + fmt(lo) + ", ∞)";
        case Kind::SupersetOfFiniteSet: return "⊇ " + list();
        case Kind::Unknown: return "unknown, κ ≥ " + fmt(floor);
    }
    return "unknown";
}

}  // namespace apportion
