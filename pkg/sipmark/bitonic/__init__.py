from .bitonic import BitonicCodec, decode_f1, encode_f1

__all__ = ['BitonicCodec', 'encode_f1', 'decode_f1']
