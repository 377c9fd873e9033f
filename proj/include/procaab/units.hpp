#pragma once

// Gaussian-cgs constants, photon-mass conversions and the published bounds.

#include <string>
#include <string_view>
#include <vector>

namespace procaab {

/// Photon mass as an inverse range m_gamma, in cm^-1. Zero is the massless limit.
class InverseRange {
public:
    constexpr InverseRange() = default;
    explicit InverseRange(double per_cm);

    /// Construct from the range 1/m_gamma in cm. An infinite range maps to zero.
    static InverseRange from_range_cm(double range_cm);

    constexpr double per_cm() const { return value_; }
    double range_cm() const;
    constexpr bool massless() const { return value_ == 0.0; }

private:
    double value_ = 0.0;
};

/// Photon rest mass m_ph in grams.
class MassGrams {
public:
    constexpr MassGrams() = default;
    explicit MassGrams(double grams);

    constexpr double grams() const { return value_; }

private:
    double value_ = 0.0;
};

namespace constants {

// Bump whenever a value below changes; stamped into every report.
inline constexpr std::string_view kVersion = "cgs-2024.1";

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHbar = 1.0546e-27;             // erg s
inline constexpr double kH = 2.0 * kPi * kHbar;         // erg s
inline constexpr double kC = 2.9979e10;                 // cm/s
inline constexpr double kBohrRadius = 5.292e-9;         // cm
inline constexpr double kElectronCharge = 4.8032e-10;   // statC
inline constexpr double kElectronMass = 9.1094e-28;     // g
inline constexpr double kYearSeconds = 3.156e7;         // s
inline constexpr double kErgPerKeV = 1.60218e-9;

}  // namespace constants

/// Snapshot of the constants table, for reports.
struct Constants {
    double hbar = constants::kHbar;
    double h = constants::kH;
    double c = constants::kC;
    double bohr_radius = constants::kBohrRadius;
    double electron_charge = constants::kElectronCharge;
    double year_seconds = constants::kYearSeconds;
};

MassGrams to_grams(InverseRange m);
InverseRange to_inverse_cm(MassGrams m);

/// Heisenberg estimate h / (dt c^2). Throws InvalidInput for dt <= 0.
MassGrams uncertainty_mass(double delta_t_seconds);

struct ReferenceBound {
    std::string label;
    InverseRange inverse_range;
    MassGrams mass;
    std::string source;
};

/// The four published bounds, stored as quoted (rounded).
const std::vector<ReferenceBound>& reference_bounds();

/// Case-insensitive substring lookup on label or source. Throws InvalidInput if nothing matches.
const ReferenceBound& find_reference_bound(std::string_view key);

}  // namespace procaab
