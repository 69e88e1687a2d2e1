"""Dataset, scheme and report I/O"""
