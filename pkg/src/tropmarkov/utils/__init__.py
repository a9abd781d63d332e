"""Utility helpers for tropmarkov."""
