# app/modules/congruences/core/__init__.py
