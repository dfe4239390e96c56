"""Schur-Nabla：斜 Schur 多项式与对角导数的精确计算服务。"""
