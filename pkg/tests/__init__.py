"""horolab test suite."""
