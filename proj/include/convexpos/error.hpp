#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace convexpos {

enum class ErrorKind {
    InvalidArgument,
    UnknownLabel,
    NonAdjacentSwitch,
    MisorderedSwitch,
    InvalidDiagram,
    InvalidSystem,
    SubsetTooSmall,
    NonOrientableTriple,
    TripleNotIndependent,
    TripleNotNonOrientable,
    StaleZone,
    ZoneNotEmpty,
    LabelMismatch,
    AxiomViolation,
    InvalidBody,
    DegeneratePair,
    CrossingPair,
    NestedPair,
    NotGeneric,
    Tolerance,
    PerturbationFailed,
    GridTooCoarse,
    SizeLimit,
    ClusterOverlap,
    UnequalSizes,
    GenerationFailed,
    MalformedInput,
    InternalInvariant,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::UnknownLabel: return "UnknownLabel";
        case ErrorKind::NonAdjacentSwitch: return "NonAdjacentSwitch";
        case ErrorKind::MisorderedSwitch: return "MisorderedSwitch";
        case ErrorKind::InvalidDiagram: return "InvalidDiagram";
        case ErrorKind::InvalidSystem: return "InvalidSystem";
        case ErrorKind::SubsetTooSmall: return "SubsetTooSmall";
        case ErrorKind::NonOrientableTriple: return "NonOrientableTriple";
        case ErrorKind::TripleNotIndependent: return "TripleNotIndependent";
        case ErrorKind::TripleNotNonOrientable: return "TripleNotNonOrientable";
        case ErrorKind::StaleZone: return "StaleZone";
        case ErrorKind::ZoneNotEmpty: return "ZoneNotEmpty";
        case ErrorKind::LabelMismatch: return "LabelMismatch";
        case ErrorKind::AxiomViolation: return "AxiomViolation";
        case ErrorKind::InvalidBody: return "InvalidBody";
        case ErrorKind::DegeneratePair: return "DegeneratePair";
        case ErrorKind::CrossingPair: return "CrossingPair";
        case ErrorKind::NestedPair: return "NestedPair";
        case ErrorKind::NotGeneric: return "NotGeneric";
        case ErrorKind::Tolerance: return "Tolerance";
        case ErrorKind::PerturbationFailed: return "PerturbationFailed";
        case ErrorKind::GridTooCoarse: return "GridTooCoarse";
        case ErrorKind::SizeLimit: return "SizeLimit";
        case ErrorKind::ClusterOverlap: return "ClusterOverlap";
        case ErrorKind::UnequalSizes: return "UnequalSizes";
        case ErrorKind::GenerationFailed: return "GenerationFailed";
        case ErrorKind::MalformedInput: return "MalformedInput";
        case ErrorKind::InternalInvariant: return "InternalInvariant";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind so the
/// CLI can map it to an exit status and tests can match on it.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace convexpos
