#include "collage/extended.hpp"

#include "collage/errors.hpp"

namespace collage {

std::size_t IrrationalTable::declare(std::string name, Rational lo, Rational hi) {
    if (lo >= hi)
        throw SemanticError("irrational generator '" + name + "' needs a window lo < hi");
    if (find(name) != npos)
        throw SemanticError("irrational generator '" + name + "' declared twice");
    gens_.push_back({std::move(name), std::move(lo), std::move(hi)});
    return gens_.size() - 1;
}

std::size_t IrrationalTable::find(const std::string& name) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name) return i;
    return npos;
}

ExtendedScalar ExtendedScalar::neg_infinity() {
    ExtendedScalar s;
    s.neg_inf_ = true;
    return s;
}

ExtendedScalar ExtendedScalar::generator(std::size_t index, Rational coeff) {
    ExtendedScalar s;
    if (coeff != 0) s.irr_[index] = std::move(coeff);
    return s;
}

Rational ExtendedScalar::coeff(std::size_t index) const {
    auto it = irr_.find(index);
    return it == irr_.end() ? Rational(0) : it->second;
}

void ExtendedScalar::prune() {
    for (auto it = irr_.begin(); it != irr_.end();)
        it = (it->second == 0) ? irr_.erase(it) : std::next(it);
}

ExtendedScalar ExtendedScalar::operator+(const ExtendedScalar& o) const {
    if (neg_inf_ || o.neg_inf_) return neg_infinity();
    ExtendedScalar r = *this;
    r.finite_ += o.finite_;
    for (const auto& [k, v] : o.irr_) r.irr_[k] += v;
    r.prune();
    return r;
}

ExtendedScalar ExtendedScalar::operator-() const {
    if (neg_inf_)
        throw IndeterminateValue("negation of -infinity is not representable");
    ExtendedScalar r = *this;
    r.finite_ = -r.finite_;
    for (auto& [k, v] : r.irr_) v = -v;
    return r;
}

ExtendedScalar ExtendedScalar::operator*(const Rational& c) const {
    if (neg_inf_) {
        if (c <= 0)
            throw IndeterminateValue("scaling -infinity by a nonpositive factor");
        return neg_infinity();
    }
    if (c == 0) return ExtendedScalar(Rational(0));
    ExtendedScalar r = *this;
    r.finite_ *= c;
    for (auto& [k, v] : r.irr_) v *= c;
    return r;
}

bool ExtendedScalar::operator==(const ExtendedScalar& o) const {
    return neg_inf_ == o.neg_inf_ && finite_ == o.finite_ && irr_ == o.irr_;
}

int ExtendedScalar::sign(const IrrationalTable& table) const {
    if (neg_inf_)
        throw IndeterminateValue("sign of -infinity requested in a finite context");
    if (irr_.empty()) return collage::sign(finite_);
    Rational lo = finite_, hi = finite_;
    for (const auto& [k, v] : irr_) {
        if (k >= table.size())
            throw SemanticError("undeclared irrational generator index");
        const auto& g = table.at(k);
        if (v > 0) {
            lo += v * g.lo;
            hi += v * g.hi;
        } else {
            lo += v * g.hi;
            hi += v * g.lo;
        }
    }
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    // The value is irrational (some coefficient is nonzero), so it cannot be
    // exactly zero; the enclosures are just too coarse.
    throw AmbiguousSign("irrational enclosures too wide to determine the sign of " +
                        to_string(table));
}

std::string ExtendedScalar::to_string(const IrrationalTable& table) const {
    if (neg_inf_) return "-inf";
    std::string s = collage::to_string(finite_);
    for (const auto& [k, v] : irr_) {
        std::string name = k < table.size() ? table.at(k).name : ("g" + std::to_string(k));
        if (v > 0) s += "+";
        if (v == 1)
            s += name;
        else if (v == -1)
            s += "-" + name;
        else
            s += collage::to_string(v) + "*" + name;
    }
    return s;
}

} // namespace collage
