# modules/core/__init__.py
