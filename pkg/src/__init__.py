"""Partial Pi-Property Engine Package"""
