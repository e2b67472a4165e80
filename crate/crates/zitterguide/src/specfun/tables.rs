//! Chebyshev coefficient tables for K0 and K1.
//!
//! Small range (x in [0, 2]), variable t = x^2/2 - 1:
//!   K0_SMALL:  K0(x) + ln(x/2) I0(x)
//!   K1_SMALL:  x K1(x) - x ln(x/2) I1(x)
//! Large range (x in [2, inf)), variable t = 4/x - 1:
//!   K0_LARGE:  exp(x) sqrt(x) K0(x)
//!   K1_LARGE:  exp(x) sqrt(x) K1(x)
//!
//! Generated by tools/gen_bessel_k_tables.py (50-digit Chebyshev-Gauss
//! projection); every fit verified below 7e-17 relative on a dense grid.

pub(crate) const K0_SMALL: [f64; 11] = [
    -0.26766369661695138,
    0.34428989992462849,
    0.035979936515361502,
    0.0012646154114469259,
    2.2862121031194518e-5,
    2.5347910790261495e-7,
    1.9045163772202089e-9,
    1.0349695257633625e-11,
    4.2598161427910826e-14,
    1.3744654358807509e-16,
    3.5708965285083736e-19,
];

pub(crate) const K1_SMALL: [f64; 11] = [
    0.76265011366947389,
    -0.35315596077654488,
    -0.12261118082265715,
    -0.0069757238596398644,
    -0.00017302889575130521,
    -2.4334061415659682e-6,
    -2.2133876307347259e-8,
    -1.4114883926335278e-10,
    -6.6669016941993290e-13,
    -2.4274498505193659e-15,
    -7.0238634793862876e-18,
];

pub(crate) const K0_LARGE: [f64; 28] = [
    1.2201515410329777,
    -0.031448101311964501,
    0.0015698838857300534,
    -0.00012849549581627803,
    1.3949813718876499e-5,
    -1.8317555227191195e-6,
    2.7668136394450151e-7,
    -4.6604898976879477e-8,
    8.5740340174142261e-9,
    -1.6975345093890615e-9,
    3.5773972814003284e-10,
    -7.9574892444773970e-11,
    1.8559491149549266e-11,
    -4.5145978833745192e-12,
    1.1403405882073442e-12,
    -2.9800969231481784e-13,
    8.0328907750683744e-14,
    -2.2275133267462964e-14,
    6.3400764762766460e-15,
    -1.8485933779209072e-15,
    5.5120559994043334e-16,
    -1.6782311257549006e-16,
    5.2103917776435541e-17,
    -1.6475805939842633e-17,
    5.3004337711773358e-18,
    -1.7331712005821000e-18,
    5.7551092028827294e-19,
    -1.9390956053183555e-19,
];

pub(crate) const K1_LARGE: [f64; 28] = [
    1.3603130952422213,
    0.10392373657681724,
    -0.0028578168596227794,
    0.00019521551847135163,
    -1.9361979741660830e-5,
    2.4064849478372171e-6,
    -3.5019606030878125e-7,
    5.7410841254500493e-8,
    -1.0345762465678097e-8,
    2.0150497551970346e-9,
    -4.1903547593419256e-10,
    9.2183151876053141e-11,
    -2.1299678384277910e-11,
    5.1396396734823435e-12,
    -1.2891739609498229e-12,
    3.3484196660522431e-13,
    -8.9767051820101461e-14,
    2.4771544242195987e-14,
    -7.0198370892147689e-15,
    2.0387031662398609e-15,
    -6.0570472706430178e-16,
    1.8380935752430454e-16,
    -5.6894628491936484e-17,
    1.7940510478863573e-17,
    -5.7567444820733025e-18,
    1.8778651901623267e-18,
    -6.2216452873526092e-19,
    2.0919125269831137e-19,
];

