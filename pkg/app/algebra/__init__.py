"""
精确代数计算：多项式环、分拆、对称多项式、对角导数、对称函数环 Λ 与恒等式验证。
"""
