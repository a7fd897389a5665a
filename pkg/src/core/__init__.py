"""Core Package"""