#pragma once

#include <stdexcept>
#include <string>

namespace silverforge {

struct UnsupportedSize : std::runtime_error {
    explicit UnsupportedSize(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct RankDeficient : std::runtime_error {
    explicit RankDeficient(const std::string& what) : std::runtime_error(what) {}
};

struct StructureViolation : std::runtime_error {
    explicit StructureViolation(const std::string& what) : std::runtime_error(what) {}
};

struct SearchTooLarge : std::runtime_error {
    explicit SearchTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct DependentLayers : std::runtime_error {
    explicit DependentLayers(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigInvalid : std::runtime_error {
    explicit ConfigInvalid(const std::string& what) : std::runtime_error(what) {}
};

} // namespace silverforge
