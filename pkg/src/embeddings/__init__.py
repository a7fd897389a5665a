"""Subgroup Embedding Predicates Package"""
