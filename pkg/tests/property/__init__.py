"""Property-based tests for horolab."""
