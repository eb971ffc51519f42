"""Unit tests for horolab."""
