#pragma once

namespace csgreen::cli {

// Reference spectra for the two benchmark problems, 12 significant digits.
// Matches are asserted to 1e-8 relative, comfortably inside the rounding of
// the last printed digit.

/// V(r) = -1/r + r, D = 3, l = 0: lowest 20 eigenvalues.
inline constexpr double kCoulombLinearRef[20] = {
    0.577921351961, 2.450162895052, 3.756905691262, 4.855671243373,
    5.836029886654, 6.736620996511, 7.578378030294, 8.374205689360,
    9.132754730978, 9.860176266906, 10.56103960914, 11.23885563715,
    11.89639544211, 12.53589461658, 13.15918982353, 13.76781330561,
    14.36306021727, 14.94603779901, 15.51770206715, 16.07888570444};

/// V(r) = -1/r + r^2/2, D = 2, l = 0: lowest 20 eigenvalues.
inline constexpr double kCoulombOscillatorRef[20] = {
    -1.836207439051, 1.576895542024, 3.828388290161, 5.963137645126,
    8.052626115348,  10.11839697526, 12.16972896261, 14.21142722055,
    16.24628453060,  18.27605894134, 20.30192413905, 22.32469992791,
    24.34497987508,  26.36320650647, 28.37971786276, 30.39477752867,
    32.40859467947,  34.42133786062, 36.43314470188, 38.44412891767};

inline constexpr double kTable1RelTol = 1e-8;

}  // namespace csgreen::cli
