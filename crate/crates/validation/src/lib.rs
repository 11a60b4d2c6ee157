//! Host package for the `acceptance` test target. Run it with
//! `cargo test -p ternary-validation --test acceptance`; each criterion prints one line.
