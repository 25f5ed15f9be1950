//! A numerical laboratory for stochastic growth models in the KPZ class and
//! their exactly solvable structure.
//!
//! The crate pairs event-driven simulators (TASEP, q-TASEP, ASEP, the q-Boson
//! zero-range process, Gelfand-Tsetlin corner dynamics, the O'Connell-Yor
//! semi-discrete polymer) with the exact formulas that describe the same
//! observables: nested contour-integral moments, Fredholm determinants of
//! Mellin-Barnes and Airy-type kernels, Bethe-ansatz eigenfunction transforms,
//! and difference-operator calculus on symmetric functions. Every exact value
//! is cross-checked against an independent oracle (a second algebraic route,
//! a brute-force expansion, or a Monte Carlo ensemble) at desk scale.
//!
//! Module map:
//!
//! * [`numerics`] — special functions and quadrature primitives (complex
//!   Gamma, digamma family, Airy, q-Pochhammer, contour rules, root finding).
//! * [`rng`] — counter-based keyed random streams for reproducible,
//!   embarrassingly parallel ensembles.
//! * [`processes`] — exact continuous-time simulators and SDE integrators.
//! * [`moments`] — nested contour-integral moment formulas and their residue
//!   expansions.
//! * [`fredholm`] — Nyström determinant engine and the model kernels,
//!   including the Tracy-Widom GUE distribution.
//! * [`bethe`] — q-Boson eigenfunctions, direct/inverse transforms, the
//!   evolution solver, duality and algebra checks.
//! * [`macdonald`] — first difference operator at t = 0 and the
//!   operator-based expectation oracle.
//! * [`asymptotics`] — Lyapunov exponents, intermittency, KPZ scaling
//!   constants, and distributional comparisons against Tracy-Widom GUE.
//! * [`cli`] — command-line driver, result store, and the regression harness.

pub mod asymptotics;
pub mod bethe;
pub mod cli;
pub mod fredholm;
pub mod macdonald;
pub mod moments;
pub mod numerics;
pub mod processes;
pub mod rng;

pub use num_complex::Complex64;
