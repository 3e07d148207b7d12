#pragma once

#include <map>
#include <string>
#include <vector>

#include "collage/rational.hpp"

namespace collage {

/// Declared irrational generators. Each generator stands for a fixed real
/// number inside its rational enclosure (lo, hi), assumed Q-linearly
/// independent of 1 and of the other generators. Zero-detection is exact
/// (all coefficients vanish); sign determination of a nonzero value uses
/// interval arithmetic over the enclosures and fails loudly when the
/// enclosures are too wide to decide.
struct IrrationalGenerator {
    std::string name;
    Rational lo, hi;
};

class IrrationalTable {
public:
    std::size_t declare(std::string name, Rational lo, Rational hi);
    std::size_t size() const { return gens_.size(); }
    const IrrationalGenerator& at(std::size_t i) const { return gens_.at(i); }
    /// Index lookup by name; npos when absent.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t find(const std::string& name) const;

private:
    std::vector<IrrationalGenerator> gens_;
};

/// A scalar of H extended with declared irrational generators and the
/// absorbing element -infinity: value = finite + sum coeff_i * alpha_i,
/// or -infinity.
class ExtendedScalar {
public:
    ExtendedScalar() : finite_(0) {}
    ExtendedScalar(Rational finite) : finite_(std::move(finite)) {}
    ExtendedScalar(int v) : finite_(v) {}

    static ExtendedScalar neg_infinity();
    static ExtendedScalar generator(std::size_t index, Rational coeff = 1);

    bool is_neg_infinity() const { return neg_inf_; }
    bool is_rational() const { return !neg_inf_ && irr_.empty(); }
    const Rational& finite_part() const { return finite_; }
    const std::map<std::size_t, Rational>& irrational_coeffs() const { return irr_; }
    Rational coeff(std::size_t index) const;

    /// -infinity absorbs; mixing is the caller's concern (a finite value
    /// plus -infinity is -infinity, matching the monoid semantics).
    ExtendedScalar operator+(const ExtendedScalar& o) const;
    ExtendedScalar operator-() const; // throws IndeterminateValue on -inf
    ExtendedScalar operator*(const Rational& c) const;
    bool operator==(const ExtendedScalar& o) const;

    /// Exact sign: 0 iff the value is exactly zero (all coefficients zero),
    /// otherwise decided from the generator enclosures. Throws AmbiguousSign
    /// when the enclosures straddle zero, and IndeterminateValue on -inf.
    int sign(const IrrationalTable& table) const;

    std::string to_string(const IrrationalTable& table) const;

private:
    bool neg_inf_ = false;
    Rational finite_;
    std::map<std::size_t, Rational> irr_;
    void prune();
};

using EVec = std::vector<ExtendedScalar>;

} // namespace collage
