"""Unit tests for the longpath package."""
