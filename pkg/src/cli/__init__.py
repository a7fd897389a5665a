"""Command Line Package"""
