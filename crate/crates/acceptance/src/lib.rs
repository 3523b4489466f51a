//! Holds the `acceptance` test target; run it with
//! `cargo test -p driftbound-suite --test acceptance`.
