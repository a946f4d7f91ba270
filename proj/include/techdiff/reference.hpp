#pragma once

#include <array>

#include "techdiff/model.hpp"

namespace techdiff::reference {

/// Published calibration for one catch-up economy: parameters, their
/// standard errors, and the projected levels for 2030 and 2050.
struct CountryCalibration {
    const char* country;
    double a0;
    double stderr_a0;
    double gamma;
    double stderr_gamma;
    double a2030;
    double a2050;
};

/// Calendar year at model time 0 for the bundled calibrations.
inline constexpr int reference_time_origin = 1995;

/// Fitted frontier paths for the two reference economies.
inline constexpr FrontierParams germany_frontier{28.7205, 0.0381261};
inline constexpr FrontierParams us_frontier{39.908, 0.0354031};

/// Eleven converging economies calibrated against the German frontier,
/// ordered by descending gamma.
inline constexpr std::array<CountryCalibration, 11> germany_calibrations{{
    {"Romania", 3.25365, 0.314761, 0.148995, 0.00464697, 72.7955, 171.836},
    {"Lithuania", 7.58554, 0.336468, 0.136149, 0.00267282, 74.3754, 167.028},
    {"Estonia", 7.11872, 0.353558, 0.130107, 0.00286485, 71.7945, 163.379},
    {"Slovakia", 11.239, 0.631024, 0.120902, 0.00390888, 71.7115, 158.83},
    {"Czechia", 12.6282, 0.410532, 0.119671, 0.00241689, 72.0422, 158.344},
    {"Slovenia", 14.9978, 0.650397, 0.116691, 0.00358649, 72.1028, 156.821},
    {"Latvia", 6.49365, 0.200544, 0.115141, 0.00167061, 64.438, 152.087},
    {"Poland", 9.14255, 0.265604, 0.110311, 0.00177447, 65.8209, 150.017},
    {"Hungary", 10.8251, 0.483776, 0.0965172, 0.00288759, 61.1909, 138.089},
    {"Bulgaria", 5.69932, 0.382148, 0.0942085, 0.00344184, 50.6926, 127.524},
    {"Croatia", 10.7837, 0.357209, 0.0863183, 0.00211604, 55.861, 126.203},
}};

/// The same economies calibrated against the US frontier.
inline constexpr std::array<CountryCalibration, 11> us_calibrations{{
    {"Romania", 3.77933, 0.276553, 0.125784, 0.00334579, 77.4339, 192.199},
    {"Lithuania", 8.37812, 0.30658, 0.105743, 0.00196187, 77.3495, 177.999},
    {"Estonia", 7.78863, 0.329619, 0.103664, 0.00221673, 74.5066, 174.483},
    {"Latvia", 6.90862, 0.195649, 0.0963823, 0.00143334, 66.335, 161.941},
    {"Slovakia", 11.8308, 0.585946, 0.0907588, 0.00295312, 72.9275, 162.422},
    {"Poland", 9.50355, 0.226165, 0.089073, 0.00131183, 67.2848, 156.059},
    {"Czechia", 12.9852, 0.334397, 0.0888178, 0.00159386, 73.2775, 160.98},
    {"Bulgaria", 5.80356, 0.34917, 0.0841821, 0.00294871, 51.8, 134.609},
    {"Slovenia", 15.1175, 0.55593, 0.0839232, 0.00358649, 72.6617, 156.019},
    {"Hungary", 11.039, 0.452043, 0.0779928, 0.00237168, 61.702, 139.667},
    {"Croatia", 10.8943, 0.336535, 0.0714743, 0.00178679, 56.0708, 126.407},
}};

}  // namespace techdiff::reference
