#pragma once

#include <optional>
#include <string>

#include "collage/basechange.hpp"
#include "collage/collage.hpp"
#include "collage/points.hpp"

namespace collage {

// The textual collage document. Parsing normalises inequality slopes to
// primitive form; everything else round-trips byte-exactly through
// serialize(parse(...)) once in canonical form.

struct DocChart {
    std::string name;
    std::size_t dim = 0;
    std::vector<FlaggedInequality> ineqs;
};

struct DocGluing {
    std::string name;
    std::string from, to;
    IMat matrix;
    QVec shift;
    std::vector<FlaggedInequality> dom;
    std::optional<std::vector<FlaggedInequality>> cod; // derived when absent
};

struct DocPoint {
    std::string name;
    std::string chart;
    EVec coords;
    std::optional<IVec> direction;
};

struct DocFlag {
    std::string name;
    std::string chart;
    std::string at_point;
    IMat directions;
};

struct DocFamilyPiece {
    std::string chart;
    std::vector<FlaggedInequality> ineqs;
};

struct DocFamily {
    std::string name;
    std::vector<DocFamilyPiece> pieces;
};

struct CollageDocument {
    IrrationalTable irrationals;
    std::vector<DocChart> charts;
    std::vector<DocGluing> gluings;
    std::vector<DocPoint> points;
    std::vector<DocFlag> flags;
    std::vector<DocFamily> families;

    std::size_t chart_index(const std::string& name) const; // SemanticError when absent
    const DocPoint& point(const std::string& name) const;
    const DocFlag& flag(const std::string& name) const;

    Polyhedron build_chart(std::size_t index) const;
    Collage build_collage() const;
    OpenFamily build_family(const std::string& name) const;
    ExtendedPoint build_point(const DocPoint& p) const;
};

/// Parses a document; SyntaxError/SemanticError carry line:column positions.
CollageDocument parse_document(const std::string& text);

std::string serialize(const CollageDocument& doc);

/// Canonical literal forms used by both the serializer and the CLI reports.
std::string format_extended(const ExtendedScalar& v, const IrrationalTable& table);

} // namespace collage
