"""Adjacency matrix of the 37-vertex example gluing (G, H in R(4,5,24) over K in R(3,5,11)).

Vertex order: a, A (12 vertices), K (11), B (12), b.  G is induced by a, A
and K; H by K, B and b; the A x B block is the cross matrix.
"""

A_VERTEX = 0
A_SIDE = tuple(range(1, 13))
K_SIDE = tuple(range(13, 24))
B_SIDE = tuple(range(24, 36))
B_VERTEX = 36

ROWS = (
    "0000000000000111111111111111111111111",
    "0010000111010100111000001110111110001",
    "0100000011001011011001001011100011111",
    "0000111001010001001010101100110111011",
    "0001000001111001110100011111001001001",
    "0001001101100100110001101110011001011",
    "0001010100010010101011011011010110111",
    "0100011000101101001110001001101111001",
    "0110000000110011100110110101111100101",
    "0111110000001100100111001011011100011",
    "0000110110001010101101100110101010111",
    "0101101010000100010101110101010001011",
    "0010100101100110010010110110010111111",
    "1100010101011000000100110101010001011",
    "1010001010101000000011011000001110111",
    "1011100110000000011100011001110111001",
    "1100111011100000011010010110101010001",
    "1110110000011001100001101110011001001",
    "1111001100100001100001101100100010111",
    "1000100111110101000011000011011100011",
    "1001001111001010100100100001101101101",
    "1010011001110010011100000011000011111",
    "1001010010111100011010000100010111101",
    "1000101010011111100000000001110000111",
    "1111111101000011011000000101001100100",
    "1101110010111100111000101001000100010",
    "1110111001101000110101000000110110100",
    "1010101111010101000111011100000001100",
    "1111000110100001101010010010000101110",
    "1101011011011101010100110010001010100",
    "1100110111100010110110001000010011010",
    "1101001111001011000110101110100010010",
    "1111001100101011101001100010011101000",
    "1011110100011101010011100001101010010",
    "1010001010101010001011111011110000000",
    "1011011001111110001101010100101101000",
    "1111111111111111111111110000000000000",
)
