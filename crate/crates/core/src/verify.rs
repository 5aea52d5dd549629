//! Verification suite (placeholder).
