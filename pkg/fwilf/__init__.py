"""
fwilf - exact pattern avoidance in rooted labeled forests
"""
# Copyright (c) 2024 the fwilf developers

__version__ = '0.1.0'
