"""Tests for horolab.core."""
