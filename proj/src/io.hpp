// JSON parsing and serialization for foams, webs, and diagrams.
#pragma once

#include <string>

#include "complex.hpp"
#include "foam.hpp"
#include "web.hpp"

namespace anchorfoam {

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& w) : std::runtime_error(w) {}
};
class SchemaVersionMismatch : public std::runtime_error {
public:
    explicit SchemaVersionMismatch(const std::string& w) : std::runtime_error(w) {}
};
class ValidationFailed : public std::runtime_error {
public:
    explicit ValidationFailed(const std::string& w) : std::runtime_error(w) {}
};

// Parse without validating; `n` is needed to size decorations and labels.
CellFoam parse_foam(const std::string& json_text, int n);
AnnularWeb parse_web(const std::string& json_text, int n);
ColoredAnnularDiagram parse_diagram(const std::string& json_text);
std::vector<CellFoam> parse_foam_list(const std::string& json_text, int n);

// Parse and validate, throwing ValidationFailed with diagnostics.
CellFoam load_foam(const std::string& json_text, int n);
AnnularWeb load_web(const std::string& json_text, int n);
ColoredAnnularDiagram load_diagram(const std::string& json_text, int n);

std::string serialize_foam(const CellFoam& f, int n = 0);
std::string serialize_web(const AnnularWeb& w);
std::string serialize_diagram(const ColoredAnnularDiagram& d);

std::string read_file(const std::string& path);

}  // namespace anchorfoam
