"""Permutation Group Core Package"""
