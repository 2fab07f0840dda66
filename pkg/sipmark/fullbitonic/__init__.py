from .fullbitonic import FullBitonicCodec, decode_f2, encode_f2

__all__ = ['FullBitonicCodec', 'encode_f2', 'decode_f2']
