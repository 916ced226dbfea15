#![cfg_attr(not(any(feature = "std", test, doctest)), no_std)]

//! Core mathematics for trigonometric Bombieri numbers.
//!
//! The library evaluates the nonnegative trigonometric blocks
//! A_n(t) = n - sin(nt)/sin t, minimizes the ratio profiles
//! phi_mn(t) = A_n(t)/A_m(t) whose minima are the trigonometric Bombieri
//! numbers B_mn, tests polynomial univalence through Dieudonne's criterion
//! backed by Schur-Cohn zero counting with an Aberth fallback, certifies
//! starlikeness of the extremal polynomial family, and reproduces the
//! second-variation coefficients q_n both by adaptive quadrature and by
//! exact rational series arithmetic.
//!
//! All computations are pure functions of their arguments and are safe to
//! call concurrently. The crate is `no_std`-compatible (it requires
//! `alloc`); the default `std` feature switches the float math from `libm`
//! to the faster system implementations.

extern crate alloc;

pub mod scan;
pub mod trig;
pub mod univalence;
pub mod variation;

pub use num_complex::Complex64;
pub use num_rational::BigRational;
