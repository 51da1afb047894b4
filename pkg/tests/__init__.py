"""Tests for slicedepth."""
