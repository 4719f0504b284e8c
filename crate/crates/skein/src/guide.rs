//! Book chapters as doc-tests.
