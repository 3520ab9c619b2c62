#pragma once
#include <stdexcept>
#include <string>

namespace symp {

// Base class for everything this library throws on malformed input or
// failed verification.  Each error carries a stable short name so CLI
// reports can surface it verbatim.
struct Error : std::runtime_error {
    std::string name;
    Error(std::string name_, const std::string& what_)
        : std::runtime_error(name_ + ": " + what_), name(std::move(name_)) {}
};

struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& w) : Error("ShapeMismatch", w) {}
};
struct DSquaredNonzero : Error {
    explicit DSquaredNonzero(const std::string& w) : Error("DSquaredNonzero", w) {}
};
struct InhomogeneousDifferential : Error {
    explicit InhomogeneousDifferential(const std::string& w) : Error("InhomogeneousDifferential", w) {}
};
struct DuplicateName : Error {
    explicit DuplicateName(const std::string& w) : Error("DuplicateName", w) {}
};
struct NonpositiveWeight : Error {
    explicit NonpositiveWeight(const std::string& w) : Error("NonpositiveWeight", w) {}
};
struct MixedPresentations : Error {
    explicit MixedPresentations(const std::string& w) : Error("MixedPresentations", w) {}
};
struct UnsupportedShape : Error {
    explicit UnsupportedShape(const std::string& w) : Error("UnsupportedShape", w) {}
};
struct NotACocycle : Error {
    explicit NotACocycle(const std::string& w) : Error("NotACocycle", w) {}
};
struct InfinitePiece : Error {
    explicit InfinitePiece(const std::string& w) : Error("InfinitePiece", w) {}
};
struct TooLarge : Error {
    explicit TooLarge(const std::string& w) : Error("TooLarge", w) {}
};
struct NoAugmentation : Error {
    explicit NoAugmentation(const std::string& w) : Error("NoAugmentation", w) {}
};
struct ClosednessFailed : Error {
    explicit ClosednessFailed(const std::string& w) : Error("ClosednessFailed", w) {}
};
struct DegenerateForm : Error {
    explicit DegenerateForm(const std::string& w) : Error("DegenerateForm", w) {}
};
struct WeightAssignmentFailed : Error {
    explicit WeightAssignmentFailed(const std::string& w) : Error("WeightAssignmentFailed", w) {}
};
struct GoldenMismatch : Error {
    explicit GoldenMismatch(const std::string& w) : Error("GoldenMismatch", w) {}
};
struct InhomogeneousSection : Error {
    explicit InhomogeneousSection(const std::string& w) : Error("InhomogeneousSection", w) {}
};
struct StrictnessViolated : Error {
    explicit StrictnessViolated(const std::string& w) : Error("StrictnessViolated", w) {}
};
struct ModelMismatch : Error {
    explicit ModelMismatch(const std::string& w) : Error("ModelMismatch", w) {}
};
struct SyntaxError : Error {
    explicit SyntaxError(const std::string& w) : Error("SyntaxError", w) {}
};
struct SemanticError : Error {
    explicit SemanticError(const std::string& w) : Error("SemanticError", w) {}
};

} // namespace symp
