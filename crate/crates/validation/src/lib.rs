//! Holds the `acceptance` test target; run it with `cargo test -p supercoh-validation --test acceptance`.
