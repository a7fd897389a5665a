"""Statement Verification Package"""
