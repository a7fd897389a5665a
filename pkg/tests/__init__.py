"""Tests Package"""